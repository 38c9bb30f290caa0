#include "fpd/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fpd {

Matching hungarian(const CostMatrix& cost) {
    const std::size_t n = cost.n;
    if (cost.values.size() != n * n)
        throw std::invalid_argument("cost matrix is not square");
    for (double v : cost.values)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("cost matrix entries must be finite and >= 0");

    Matching m;
    m.row_to_col.assign(n, -1);
    m.col_to_row.assign(n, -1);
    if (n == 0) return m;

    // Shortest augmenting paths with potentials (Jonker-Volgenant scheme),
    // 1-based internally.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = p[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (std::size_t j = 1; j <= n; ++j) {
        if (p[j] == 0) continue;
        m.row_to_col[p[j] - 1] = static_cast<int>(j - 1);
        m.col_to_row[j - 1] = static_cast<int>(p[j] - 1);
    }
    // accumulate in sorted order so equal-cost optima (same entry multiset,
    // different assignment) produce bitwise-identical costs
    std::vector<double> matched(n);
    for (std::size_t i = 0; i < n; ++i) matched[i] = cost.at(i, m.row_to_col[i]);
    std::sort(matched.begin(), matched.end());
    for (double v : matched) m.cost += v;
    return m;
}

CostMatrix detail::augment_points(const std::vector<DiagramPoint>& a,
                                  const std::vector<DiagramPoint>& b) {
    const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
    CostMatrix c;
    c.n = n;
    c.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n1; ++i) {
        double da = distance_to_diagonal(a[i]);
        double da2 = da * da;
        for (std::size_t j = 0; j < n2; ++j) {
            double db = a[i].birth - b[j].birth, dd = a[i].death - b[j].death;
            c.at(i, j) = db * db + dd * dd;
        }
        for (std::size_t j = n2; j < n; ++j) c.at(i, j) = da2;
    }
    for (std::size_t i = n1; i < n; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            double db = distance_to_diagonal(b[j]);
            c.at(i, j) = db * db;
        }
        // diagonal-diagonal block stays 0
    }
    return c;
}

CostMatrix augment(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    if (!d1.all_finite() || !d2.all_finite())
        throw std::invalid_argument("augment requires capped diagrams (no infinite deaths)");
    return detail::augment_points(d1.points(), d2.points());
}

namespace {

// Hopcroft-Karp maximum matching on the augmented bipartite graph with the
// edge set {cost <= eps}. Adjacency is implicit: left/right index < n_real
// means a real point, otherwise a diagonal slot.
struct BottleneckGraph {
    const std::vector<DiagramPoint>& a;
    const std::vector<DiagramPoint>& b;
    double eps;
    std::size_t n1, n2, n;

    bool edge(std::size_t l, std::size_t r) const {
        bool lreal = l < n1, rreal = r < n2;
        if (lreal && rreal) return detail::linf(a[l], b[r]) <= eps;
        if (lreal) return detail::linf_to_diagonal(a[l]) <= eps;
        if (rreal) return detail::linf_to_diagonal(b[r]) <= eps;
        return true;
    }
};

bool perfect_matching(const BottleneckGraph& g) {
    const std::size_t n = g.n;
    const int NIL = -1;
    std::vector<int> match_l(n, NIL), match_r(n, NIL), dist(n);
    auto bfs = [&]() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t l = 0; l < n; ++l) {
            if (match_l[l] == NIL) {
                dist[l] = 0;
                q.push(l);
            } else {
                dist[l] = -1;
            }
        }
        while (!q.empty()) {
            std::size_t l = q.front();
            q.pop();
            for (std::size_t r = 0; r < n; ++r) {
                if (!g.edge(l, r)) continue;
                int l2 = match_r[r];
                if (l2 == NIL) {
                    found = true;
                } else if (dist[l2] == -1) {
                    dist[l2] = dist[l] + 1;
                    q.push(static_cast<std::size_t>(l2));
                }
            }
        }
        return found;
    };
    std::function<bool(std::size_t)> dfs = [&](std::size_t l) -> bool {
        for (std::size_t r = 0; r < n; ++r) {
            if (!g.edge(l, r)) continue;
            int l2 = match_r[r];
            if (l2 == NIL || (dist[l2] == dist[l] + 1 && dfs(static_cast<std::size_t>(l2)))) {
                match_l[l] = static_cast<int>(r);
                match_r[r] = static_cast<int>(l);
                return true;
            }
        }
        dist[l] = -1;
        return false;
    };
    std::size_t matched = 0;
    while (bfs()) {
        for (std::size_t l = 0; l < n; ++l)
            if (match_l[l] == NIL && dfs(l)) ++matched;
    }
    return matched == n;
}

}  // namespace

bool bottleneck_feasible(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                         double eps) {
    if (eps < 0.0) return false;
    if (!d1.all_finite() || !d2.all_finite())
        throw std::invalid_argument("bottleneck requires capped diagrams");
    const auto& a = d1.points();
    const auto& b = d2.points();
    BottleneckGraph g{a, b, eps, a.size(), b.size(), a.size() + b.size()};
    if (g.n == 0) return true;
    return perfect_matching(g);
}

}  // namespace fpd
