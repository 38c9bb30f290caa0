// Brute-force reference implementations for the test suite. Everything here
// is deliberately independent of the library's algorithmic path: exhaustive
// enumeration and naive reductions only.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/matching.hpp"
#include "fpd/rips.hpp"
#include "fpd/frechet_mean.hpp"

namespace oracle {

// Minimum assignment cost by enumerating all n! permutations. Entries are
// accumulated in sorted order, matching the solver's deterministic summation.
inline double assignment_cost(const fpd::CostMatrix& c) {
    std::vector<std::size_t> perm(c.n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    if (c.n == 0) return 0.0;
    std::vector<double> entries(c.n);
    do {
        for (std::size_t i = 0; i < c.n; ++i) entries[i] = c.at(i, perm[i]);
        std::sort(entries.begin(), entries.end());
        double total = 0.0;
        for (double v : entries) total += v;
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// All injective partial maps from the points of a to the points of b;
// unmapped points on either side pair with the diagonal. `cost` combines a
// pair cost and a per-point diagonal cost, `reduce` folds pair costs (sum for
// W2, max for bottleneck).
template <typename PairCost, typename DiagCost, typename Reduce>
double best_transport(const std::vector<fpd::DiagramPoint>& a,
                      const std::vector<fpd::DiagramPoint>& b, PairCost pair_cost,
                      DiagCost diag_cost, Reduce reduce, double identity) {
    const std::size_t na = a.size(), nb = b.size();
    std::vector<int> partner(na, -1);
    std::vector<char> used(nb, 0);
    double best = std::numeric_limits<double>::infinity();
    auto evaluate = [&]() {
        double total = identity;
        std::vector<char> matched(nb, 0);
        for (std::size_t i = 0; i < na; ++i) {
            if (partner[i] >= 0) {
                total = reduce(total, pair_cost(a[i], b[partner[i]]));
                matched[partner[i]] = 1;
            } else {
                total = reduce(total, diag_cost(a[i]));
            }
        }
        for (std::size_t j = 0; j < nb; ++j)
            if (!matched[j]) total = reduce(total, diag_cost(b[j]));
        best = std::min(best, total);
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == na) {
            evaluate();
            return;
        }
        partner[i] = -1;
        rec(i + 1);
        for (std::size_t j = 0; j < nb; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            partner[i] = static_cast<int>(j);
            rec(i + 1);
            used[j] = 0;
        }
        partner[i] = -1;
    };
    rec(0);
    return best;
}

inline double w2_squared(const fpd::PersistenceDiagram& d1, const fpd::PersistenceDiagram& d2) {
    auto pair_cost = [](const fpd::DiagramPoint& p, const fpd::DiagramPoint& q) {
        double db = p.birth - q.birth, dd = p.death - q.death;
        return db * db + dd * dd;
    };
    auto diag_cost = [](const fpd::DiagramPoint& p) {
        double d = fpd::distance_to_diagonal(p);
        return d * d;
    };
    return best_transport(d1.points(), d2.points(), pair_cost, diag_cost,
                          [](double x, double y) { return x + y; }, 0.0);
}

inline double bottleneck(const fpd::PersistenceDiagram& d1, const fpd::PersistenceDiagram& d2) {
    return best_transport(d1.points(), d2.points(), fpd::detail::linf,
                          fpd::detail::linf_to_diagonal,
                          [](double x, double y) { return std::max(x, y); }, 0.0);
}

// Persistence pairs straight from the definition: full boundary matrix over
// Z/2, plain left-to-right column reduction, no clearing.
struct NaivePairs {
    // (birth, death) per homology dimension, death = +inf for essentials;
    // zero-persistence pairs removed
    std::vector<std::vector<fpd::DiagramPoint>> by_dim;
};

inline NaivePairs naive_persistence(const fpd::Filtration& f) {
    const std::size_t n = f.entries.size();
    std::vector<std::set<std::size_t>> cols(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = f.entries[i];
        if (e.dim == 0) continue;
        for (int skip = 0; skip <= e.dim; ++skip) {
            std::array<std::int32_t, 4> face{-1, -1, -1, -1};
            int w = 0;
            for (int k = 0; k <= e.dim; ++k)
                if (k != skip) face[w++] = e.v[k];
            cols[i].insert(static_cast<std::size_t>(f.position(e.dim - 1, face)));
        }
    }
    std::vector<long> pivot_owner(n, -1);
    std::vector<char> is_death(n, 0);
    NaivePairs out;
    out.by_dim.resize(f.max_dim);
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = cols[j];
        while (!col.empty()) {
            std::size_t low = *col.rbegin();
            long owner = pivot_owner[low];
            if (owner < 0) break;
            for (std::size_t e : cols[owner]) {
                auto it = col.find(e);
                if (it != col.end())
                    col.erase(it);
                else
                    col.insert(e);
            }
        }
        if (col.empty()) continue;
        std::size_t low = *col.rbegin();
        pivot_owner[low] = static_cast<long>(j);
        is_death[j] = 1;
        int p = f.entries[low].dim;
        double birth = f.entries[low].scale, death = f.entries[j].scale;
        if (p < f.max_dim && birth != death) out.by_dim[p].push_back({birth, death});
    }
    // essential classes: birth simplices never used as a pivot and whose own
    // column vanished
    for (std::size_t j = 0; j < n; ++j) {
        if (is_death[j]) continue;
        if (pivot_owner[j] >= 0) continue;
        int p = f.entries[j].dim;
        if (p < f.max_dim) out.by_dim[p].push_back({f.entries[j].scale, fpd::kInf});
    }
    for (auto& v : out.by_dim) std::sort(v.begin(), v.end());
    return out;
}

// Joint-matching study of the weighted Fréchet mean. Depends only on the
// library's data types and Hungarian-free exhaustive enumeration.
// Brute-force study of the joint matching space: every combination of
// per-diagram injective partial maps (slot -> point or diagonal), the exact
// point update applied to each, and the resulting Fréchet value measured with
// the exhaustive transport oracle.
struct JointMatchingOracle {
    using WeightedMeanProblem = fpd::WeightedMeanProblem;
    using PersistenceDiagram = fpd::PersistenceDiagram;
    using DiagramPoint = fpd::DiagramPoint;

    const fpd::WeightedMeanProblem& p;
    std::size_t m;
    std::vector<std::size_t> included;

    explicit JointMatchingOracle(const fpd::WeightedMeanProblem& problem) : p(problem) {
        m = p.padded_cardinality();
        for (std::size_t j = 0; j < p.diagrams.size(); ++j)
            if (p.weights[j] > 0.0) included.push_back(j);
    }

    std::vector<std::vector<int>> maps_for(const fpd::PersistenceDiagram& d) const {
        std::vector<std::vector<int>> out;
        std::vector<int> cur(m, -1);
        std::vector<char> used(d.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t slot) {
            if (slot == m) {
                out.push_back(cur);
                return;
            }
            cur[slot] = -1;
            rec(slot + 1);
            for (std::size_t t = 0; t < d.size(); ++t) {
                if (used[t]) continue;
                used[t] = 1;
                cur[slot] = static_cast<int>(t);
                rec(slot + 1);
                used[t] = 0;
            }
            cur[slot] = -1;
        };
        rec(0);
        return out;
    }

    fpd::PersistenceDiagram mean_of(const std::vector<std::vector<int>>& joint) const {
        std::vector<DiagramPoint> pts;
        for (const auto& [point, real] : slot_point_list(joint))
            if (real) pts.push_back(point);
        return fpd::PersistenceDiagram(p.diagrams.front().dim(), std::move(pts));
    }

    double frechet_of(const fpd::PersistenceDiagram& mean) const {
        double f = 0.0;
        for (std::size_t j : included) f += p.weights[j] * w2_squared(mean, p.diagrams[j]);
        return f;
    }

    // cost of a specific joint matching evaluated at a given mean
    double joint_cost(const std::vector<std::vector<int>>& joint,
                      const fpd::PersistenceDiagram& mean) const {
        // rebuild slot points: mean points fill the slots whose update was real,
        // in enumeration order; the caller must pass mean_of(joint)
        double total = 0.0;
        for (std::size_t jj = 0; jj < included.size(); ++jj) {
            const auto& d = p.diagrams[included[jj]];
            double w = p.weights[included[jj]];
            std::vector<char> used(d.size(), 0);
            double cost = 0.0;
            // slots -> mean points: recompute the update per slot
            std::size_t mean_idx = 0;
            auto slot_points = slot_point_list(joint);
            for (std::size_t i = 0; i < m; ++i) {
                int t = joint[jj][i];
                if (slot_points[i].second) {
                    const auto& y = slot_points[i].first;
                    (void)mean_idx;
                    if (t >= 0) {
                        const auto& x = d.points()[t];
                        double db = y.birth - x.birth, dd = y.death - x.death;
                        cost += db * db + dd * dd;
                        used[t] = 1;
                    } else {
                        double dd = fpd::distance_to_diagonal(y);
                        cost += dd * dd;
                    }
                } else if (t >= 0) {
                    double dd = fpd::distance_to_diagonal(d.points()[t]);
                    cost += dd * dd;
                    used[t] = 1;
                }
            }
            for (std::size_t t = 0; t < d.size(); ++t)
                if (!used[t]) {
                    double dd = fpd::distance_to_diagonal(d.points()[t]);
                    cost += dd * dd;
                }
            total += w * cost;
        }
        (void)mean;
        return total;
    }

    // exact per-slot minimizer given the matching: the weighted-centroid
    // point unless the diagonal option is at least as cheap
    std::vector<std::pair<fpd::DiagramPoint, bool>> slot_point_list(
        const std::vector<std::vector<int>>& joint) const {
        double total = 0.0;
        for (std::size_t j : included) total += p.weights[j];
        std::vector<std::pair<fpd::DiagramPoint, bool>> slots(m, {fpd::DiagramPoint{}, false});
        for (std::size_t i = 0; i < m; ++i) {
            double wb = 0.0, wd = 0.0, w_od = 0.0, diag_cost = 0.0;
            for (std::size_t jj = 0; jj < included.size(); ++jj) {
                int t = joint[jj][i];
                if (t < 0) continue;
                const auto& x = p.diagrams[included[jj]].points()[t];
                double w = p.weights[included[jj]];
                wb += w * x.birth;
                wd += w * x.death;
                w_od += w;
                double dd = fpd::distance_to_diagonal(x);
                diag_cost += w * dd * dd;
            }
            if (w_od <= 0.0) continue;
            double ob = wb / w_od, od = wd / w_od;
            double proj = 0.5 * (ob + od);
            double w_diag = total - w_od;
            double b = (wb + w_diag * proj) / total;
            double d = (wd + w_diag * proj) / total;
            double point_cost = 0.0;
            for (std::size_t jj = 0; jj < included.size(); ++jj) {
                int t = joint[jj][i];
                double w = p.weights[included[jj]];
                if (t < 0) {
                    double dd = (d - b) / std::sqrt(2.0);
                    point_cost += w * dd * dd;
                } else {
                    const auto& x = p.diagrams[included[jj]].points()[t];
                    double db = b - x.birth, ddth = d - x.death;
                    point_cost += w * (db * db + ddth * ddth);
                }
            }
            if (d - b > 0.0 && point_cost < diag_cost) slots[i] = {{b, d}, true};
        }
        return slots;
    }

    struct Best {
        fpd::PersistenceDiagram mean;
        double frechet = 0.0;
        bool found = false;
    };

    // best fixed point: a joint matching whose cost at its own updated mean is
    // exactly the optimal transport cost for every diagram
    Best best_stable() const {
        Best best;
        std::vector<std::vector<std::vector<int>>> all;
        for (std::size_t j : included) all.push_back(maps_for(p.diagrams[j]));
        std::vector<std::size_t> pick(included.size(), 0);
        std::vector<std::vector<int>> joint(included.size());
        std::function<void(std::size_t)> rec = [&](std::size_t jj) {
            if (jj == included.size()) {
                for (std::size_t q = 0; q < included.size(); ++q) joint[q] = all[q][pick[q]];
                auto mean = mean_of(joint);
                double cost = joint_cost(joint, mean);
                double opt = 0.0;
                for (std::size_t q = 0; q < included.size(); ++q)
                    opt += p.weights[included[q]] * w2_squared(mean, p.diagrams[included[q]]);
                if (cost <= opt + 1e-9) {  // matching realizes the optimal transport
                    double f = frechet_of(mean);
                    if (!best.found || f < best.frechet) {
                        best.mean = mean;
                        best.frechet = f;
                        best.found = true;
                    }
                }
                return;
            }
            for (pick[jj] = 0; pick[jj] < all[jj].size(); ++pick[jj]) rec(jj + 1);
        };
        rec(0);
        return best;
    }
};


// Crisp Rand index of two hard labelings.
inline double crisp_rand(const std::vector<int>& x, const std::vector<int>& y) {
    const std::size_t n = x.size();
    double agree = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool sx = x[i] == x[j], sy = y[i] == y[j];
            agree += sx == sy ? 1.0 : 0.0;
            total += 1.0;
        }
    return total > 0 ? agree / total : 1.0;
}

}  // namespace oracle
