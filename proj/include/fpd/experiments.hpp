#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fpd/datagen.hpp"
#include "fpd/diagram.hpp"
#include "fpd/evaluation.hpp"
#include "fpd/fuzzy_cmeans.hpp"
#include "fpd/rips.hpp"

namespace fpd {

// ---------------------------------------------------------------------------
// Exemplar corpus: three noise, three ring, three figure-eight clouds
// (seeds 0-2), 1-PH, c = 3. Geometry constants live in datagen; the sampling
// density and jitter here are chosen so each shape's features are
// well-resolved within the simplex budget.
struct ExemplarConfig {
    int n_noise = 150;
    int n_ring = 50;
    int n_fig8 = 300;
    double sigma = 0.002;
    double rips_threshold = 0.7;
    std::uint64_t cloud_seed_base = 0;  // seeds 0,1,2 per shape
    std::uint64_t cluster_seed = 0;
    int max_iter = 20;
    DistanceSpec distance;
    MembershipExponent exponent = MembershipExponent::j_minimizing;
    int threads = 0;
};

struct ExemplarResult {
    DiagramSet diagrams;        // 9 capped 1-PH diagrams, shape-major order
    ReferencePartition labels;  // 0 = noise, 1 = ring, 2 = figure-eight
    ClusterState state;
    double corpus_max_persistence = 0.0;
    double seconds_ph = 0.0;
    double seconds_cluster = 0.0;
};

// Generates the corpus only (shared by the distance-comparison experiment).
ExemplarResult build_exemplar_corpus(const ExemplarConfig& cfg);
ExemplarResult run_exemplar(const ExemplarConfig& cfg);

// ---------------------------------------------------------------------------
// Convergence grid over randomly generated diagrams.
struct ConvergenceConfig {
    std::vector<int> diagram_counts{25, 50, 75, 100};
    std::vector<int> points_per_diagram{10, 20, 30, 40, 50};
    std::array<std::uint64_t, 3> seeds{0, 1, 2};
    int c = 3;
    int max_iter = 20;
    double tol = 0.005;
};

struct ConvergenceCell {
    int n_diagrams = 0;
    int points = 0;
    std::uint64_t seed = 0;
    int iterations_to_converge = 0;  // 0 = never stabilized
    bool converged = false;
    double mean_wfm_iterations = 0.0;
    double seconds = 0.0;
};

// Uniform random diagram: births in [0,1), persistences in (0,1).
PersistenceDiagram random_diagram(int dim, int points, std::uint64_t seed);
DiagramSet random_diagram_set(int n, int points, std::uint64_t seed);

std::vector<ConvergenceCell> run_convergence(const ConvergenceConfig& cfg);

// ---------------------------------------------------------------------------
// Distance comparison on the exemplar corpus.
struct DistanceComparisonRow {
    DistanceKind kind;
    double rand_index = 0.0;
    double seconds_per_pair = 0.0;
    int iterations = 0;
};

std::vector<DistanceComparisonRow> run_distance_comparison(const ExemplarConfig& cfg);

// ---------------------------------------------------------------------------
// Lattice invariance: BCC vs FCC, three copies each, 2-PH, c = 2.
struct LatticeConfig {
    int cells_per_axis = 2;
    double lattice_constant = 1.0;
    std::uint64_t cluster_seed = 0;
    int max_iter = 20;
    std::size_t budget = kDefaultSimplexBudget;
    int homology_dim = 2;
};

struct LatticeResult {
    std::string transform_name;
    DiagramSet diagrams;        // bcc copies 1-3 then fcc copies 4-6
    ReferencePartition labels;  // 0 = bcc, 1 = fcc
    ClusterState state;
    double seconds_ph = 0.0;
};

// The four transform regimes of the lattice study: none, rotate (180 degrees
// about x and y for the second and third copies), reflect (x and y),
// translate (+/- one unit cell along z).
std::vector<LatticeResult> run_lattice(const LatticeConfig& cfg);

}  // namespace fpd
