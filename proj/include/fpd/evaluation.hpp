#pragma once

#include <string>
#include <vector>

#include "fpd/fuzzy_cmeans.hpp"

namespace fpd {

// Reference labels, one per diagram, in corpus order.
struct ReferencePartition {
    std::vector<int> labels;
};

// Hüllermeier-Rifqi fuzzy Rand index between a fuzzy partition and a hard
// reference partition. Degenerates to the crisp Rand index on one-hot
// memberships. Value in [0, 1].
double fuzzy_rand(const MembershipMatrix& memberships, const ReferencePartition& reference);

// One integer label per line.
ReferencePartition read_labels_csv(const std::string& path);

}  // namespace fpd
