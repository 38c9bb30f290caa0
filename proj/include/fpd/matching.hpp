#pragma once

#include <cstddef>
#include <vector>

#include "fpd/diagram.hpp"

namespace fpd {

// Dense square cost matrix, row-major.
struct CostMatrix {
    std::size_t n = 0;
    std::vector<double> values;  // n*n

    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// A minimum-cost perfect matching: row i is assigned column row_to_col[i].
struct Matching {
    std::vector<int> row_to_col;
    std::vector<int> col_to_row;
    double cost = 0.0;  // sum of the matched entries
};

// Exact O(n^3) shortest-augmenting-path assignment solver. Requires a square
// matrix of finite, non-negative entries. n == 0 yields the empty matching.
Matching hungarian(const CostMatrix& cost);

// The (n1+n2)^2 diagonal-augmented matrix for two capped diagrams: real-real
// entries are squared L2 distances, real-diagonal entries the squared
// distance of the real point to the diagonal, diagonal-diagonal entries 0.
// Rows: d1 points then n2 diagonal slots; columns: d2 points then n1 slots.
CostMatrix augment(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// True iff a perfect matching of the augmented sets exists using only pairs
// of L-infinity cost <= eps (diagonal partner cost = persistence / 2).
bool bottleneck_feasible(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                         double eps);

namespace detail {
// L-infinity ground distance between diagram points.
inline double linf(const DiagramPoint& a, const DiagramPoint& b) {
    double db = a.birth - b.birth, dd = a.death - b.death;
    return std::max(std::fabs(db), std::fabs(dd));
}
inline double linf_to_diagonal(const DiagramPoint& p) {
    return (p.death - p.birth) / 2.0;
}
// augment() on raw point lists, preserving the given point order.
CostMatrix augment_points(const std::vector<DiagramPoint>& a,
                          const std::vector<DiagramPoint>& b);
}  // namespace detail

}  // namespace fpd
