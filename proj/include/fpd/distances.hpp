#pragma once

#include <string>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/kernels.hpp"
#include "fpd/matching.hpp"

namespace fpd {

// Exact 2-Wasserstein distance: sqrt of the optimal augmented matching cost.
double wasserstein2(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// Exact bottleneck distance via binary search over candidate costs with a
// bipartite feasibility test at each step.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// Mean over `directions` evenly spaced angles in [-pi/2, pi/2) of the 1-D W1
// distance between the projected diagrams, each augmented with the diagonal
// projections of the other's points.
double sliced_wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                          int directions);

// Persistence image: weighted Gaussians in (birth, persistence) coordinates
// integrated over a fixed grid. The grid is shared across a corpus so that
// image vectors are comparable.
struct PersistenceImageGrid {
    int resolution = 20;
    double bandwidth = 0.0;
    // bounding box in (birth, persistence) coordinates, padded by one
    // bandwidth on each side
    double birth_lo = 0.0, birth_hi = 0.0;
    double pers_lo = 0.0, pers_hi = 0.0;
    double max_persistence = 0.0;  // linear ramp weight normalizer

    // bandwidth < 0 selects 0.1 * corpus persistence range.
    static PersistenceImageGrid from_corpus(const std::vector<PersistenceDiagram>& corpus,
                                            int resolution, double bandwidth);
};

std::vector<double> persistence_image(const PersistenceDiagram& d,
                                      const PersistenceImageGrid& grid);
double pi_l2(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
             const PersistenceImageGrid& grid);

// Persistence scale-space kernel distance
// sqrt(k(F,F) + k(G,G) - 2 k(F,G)) at scale t > 0.
double heat_kernel_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                            double t);

enum class DistanceKind {
    wasserstein2,
    bottleneck,
    sliced_wasserstein,
    persistence_image_l2,
    heat_kernel,
};

struct DistanceSpec {
    DistanceKind kind = DistanceKind::wasserstein2;
    int directions = 50;      // sliced wasserstein
    int resolution = 20;      // persistence image
    double bandwidth = -1.0;  // persistence image; <0 = 0.1 * corpus persistence range
    double heat_time = -1.0;  // heat kernel; <0 = 0.1 * squared corpus persistence range
};

DistanceKind parse_distance_kind(const std::string& name);  // w2|bottleneck|sw|pi|heat
std::string distance_kind_name(DistanceKind kind);

// Fixes corpus-relative parameters (image grid, heat time) and returns a
// callable metric. Corpus-independent kinds ignore `corpus`.
DiagramMetric resolve_metric(const DistanceSpec& spec,
                             const std::vector<PersistenceDiagram>& corpus);

// Largest persistence over all points of all diagrams (0 when empty).
double corpus_max_persistence(const std::vector<PersistenceDiagram>& corpus);

}  // namespace fpd
