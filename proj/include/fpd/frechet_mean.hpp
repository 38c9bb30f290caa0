#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fpd/diagram.hpp"

namespace fpd {

// Weighted Fréchet mean of a set of capped diagrams: the minimizer of
// sum_j w_j W2(mean, D_j)^2. Weights are the squared memberships when driven
// by the clustering loop.
struct WeightedMeanProblem {
    std::vector<PersistenceDiagram> diagrams;
    std::vector<double> weights;  // >= 0, not all zero

    // common padded cardinality: max diagram size over positive weights
    std::size_t padded_cardinality() const;
};

// slot -> index of the matched point in the target diagram, or -1 when the
// slot is paired with the diagonal.
using PartnerMap = std::vector<int>;

// One matching pass of the mean's slots against a target diagram. Real slots
// receive their optimal-transport partner (point index or diagonal). Target
// points that the optimal transport sends to the diagonal are then assigned
// to free diagonal slots in descending-persistence order, which lets a
// diagonal slot move off the diagonal at the next update; the assignment is
// cost-neutral since such a pairing costs exactly the point's distance to
// the diagonal. The matching cost therefore always equals W2(mean, target)^2.
PartnerMap match_slots(const std::vector<DiagramPoint>& slot_points,
                       const std::vector<char>& slot_real,
                       const PersistenceDiagram& target);

struct MeanState {
    PersistenceDiagram mean;
    std::vector<PartnerMap> matchings;  // per diagram; empty for zero-weight diagrams
    double frechet_value = 0.0;         // sum_j w_j W2(mean, D_j)^2, recomputed from the mean
    int iterations = 0;                 // number of point updates applied
    bool converged = false;             // matchings repeated before max_iter
};

// Alternates optimal matchings and the weighted point update until the
// matchings are unchanged between consecutive iterations (compared as
// pairings, not costs) or max_iter is reached.
MeanState weighted_frechet_mean(const WeightedMeanProblem& p, const PersistenceDiagram& init,
                                int max_iter = 100);

double frechet_value(const PersistenceDiagram& mean, const WeightedMeanProblem& p);

// Weight-proportional draw of an input diagram as the starting mean.
PersistenceDiagram sample_init(const WeightedMeanProblem& p, std::mt19937_64& rng);

}  // namespace fpd
