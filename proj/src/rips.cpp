#include "fpd/rips.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fpd/kernels.hpp"

namespace fpd {

namespace {

std::uint64_t pack_vertices(const std::array<std::int32_t, 4>& v, int dim) {
    std::uint64_t key = 0;
    for (int i = 0; i <= dim; ++i)
        key = (key << 16) | static_cast<std::uint64_t>(v[i] & 0xffff);
    // shift so that lexicographic order on the vertex tuple matches numeric
    // order within one dimension
    key <<= 16 * (3 - dim);
    return key;
}

}  // namespace

void Filtration::build_index() {
    keys_.assign(max_dim + 1, {});
    key_pos_.assign(max_dim + 1, {});
    std::vector<std::size_t> counts(max_dim + 1, 0);
    for (const auto& e : entries) ++counts[e.dim];
    for (int d = 0; d <= max_dim; ++d) {
        keys_[d].reserve(counts[d]);
        key_pos_[d].reserve(counts[d]);
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        keys_[e.dim].push_back(pack_vertices(e.v, e.dim));
        key_pos_[e.dim].push_back(static_cast<std::int32_t>(i));
    }
    for (int d = 0; d <= max_dim; ++d) {
        std::vector<std::int32_t> idx(keys_[d].size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::int32_t a, std::int32_t b) {
            return keys_[d][a] < keys_[d][b];
        });
        std::vector<std::uint64_t> k(idx.size());
        std::vector<std::int32_t> p(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            k[i] = keys_[d][idx[i]];
            p[i] = key_pos_[d][idx[i]];
        }
        keys_[d] = std::move(k);
        key_pos_[d] = std::move(p);
    }
}

std::int64_t Filtration::position(int dim, const std::array<std::int32_t, 4>& v) const {
    if (dim < 0 || dim > max_dim) return -1;
    std::uint64_t key = pack_vertices(v, dim);
    const auto& ks = keys_[dim];
    auto it = std::lower_bound(ks.begin(), ks.end(), key);
    if (it == ks.end() || *it != key) return -1;
    return key_pos_[dim][it - ks.begin()];
}

Filtration build_rips(const PointCloud& pc, int max_dim, double threshold,
                      std::size_t budget) {
    if (max_dim < 1 || max_dim > 3)
        throw std::invalid_argument("max_dim must be in {1,2,3}");
    if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
    const std::size_t n = pc.size();
    if (n == 0) throw std::invalid_argument("empty point cloud");
    if (n > 0xffff) throw std::invalid_argument("point cloud too large (vertex ids are 16-bit)");

    auto over_budget = [budget](std::size_t count) {
        if (count > budget)
            throw std::runtime_error("simplex budget exceeded (" + std::to_string(budget) +
                                     "); lower the threshold or raise --budget");
    };

    std::vector<double> dist = pairwise_distances(pc);
    auto d = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };

    Filtration f;
    f.max_dim = max_dim;
    f.threshold = threshold;
    auto& entries = f.entries;

    for (std::size_t i = 0; i < n; ++i)
        entries.push_back({0.0, {static_cast<std::int32_t>(i), -1, -1, -1}, 0});

    // neighbour lists restricted to j > i keep every simplex enumerated once
    std::vector<std::vector<std::int32_t>> nb(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d(i, j) <= threshold) {
                nb[i].push_back(static_cast<std::int32_t>(j));
                entries.push_back({d(i, j),
                                   {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), -1, -1},
                                   1});
                over_budget(entries.size());
            }

    if (max_dim >= 2) {
        std::vector<std::int32_t> common;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::int32_t j : nb[i]) {
                common.clear();
                std::set_intersection(nb[i].begin(), nb[i].end(), nb[j].begin(), nb[j].end(),
                                      std::back_inserter(common));
                for (std::int32_t k : common) {
                    double s = std::max({d(i, j), d(i, k), d(j, k)});
                    entries.push_back({s, {static_cast<std::int32_t>(i), j, k, -1}, 2});
                    over_budget(entries.size());
                    if (max_dim >= 3) {
                        for (std::int32_t l : nb[k]) {
                            if (d(i, l) <= threshold && d(j, l) <= threshold) {
                                double s2 = std::max({s, d(i, l), d(j, l), d(k, l)});
                                entries.push_back({s2, {static_cast<std::int32_t>(i), j, k, l}, 3});
                                over_budget(entries.size());
                            }
                        }
                    }
                }
            }
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Filtration::Entry& a, const Filtration::Entry& b) {
        if (a.scale != b.scale) return a.scale < b.scale;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.v < b.v;
    });
    f.build_index();
    return f;
}

namespace {

// Z/2 column addition: symmetric difference of sorted index vectors.
void add_column(std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a = std::move(out);
}

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int32_t find(std::int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
};

// Elder-rule 0-PH. Also marks the merging (negative) edges: their columns are
// the dim-0 deaths, which clears them from the dim-1 coboundary pass.
PersistenceDiagram zero_dim_diagram(const Filtration& f, std::vector<char>& cleared) {
    std::int32_t n_vertices = 0;
    for (const auto& e : f.entries)
        if (e.dim == 0) ++n_vertices;
    UnionFind uf(n_vertices);
    std::vector<DiagramPoint> pts;
    std::int32_t components = n_vertices;
    for (std::size_t pos = 0; pos < f.entries.size(); ++pos) {
        const auto& e = f.entries[pos];
        if (e.dim != 1) continue;
        std::int32_t ra = uf.find(e.v[0]), rb = uf.find(e.v[1]);
        if (ra == rb) continue;
        // elder rule: all vertices are born at 0, the merged (younger) class
        // dies at the edge scale
        uf.parent[std::max(ra, rb)] = std::min(ra, rb);
        pts.push_back({0.0, e.scale});
        cleared[pos] = 1;
        --components;
    }
    for (std::int32_t c = 0; c < components; ++c) pts.push_back({0.0, kInf});
    return PersistenceDiagram(0, std::move(pts));
}

}  // namespace

// Column reduction of the anti-transposed (coboundary) matrix with clearing,
// dimension by dimension. The pairs are exactly the boundary-matrix pairs,
// but a pass over homology degree q reduces one column per q-simplex instead
// of one per (q+1)-simplex, so top-dimension simplices are only ever row
// indices. Row index = reversed filtration position; pivot = oldest cofacet.
std::vector<PersistenceDiagram> persistence_all(const Filtration& f) {
    const std::size_t total = f.entries.size();
    const std::int32_t n_total = static_cast<std::int32_t>(total);
    std::vector<std::vector<DiagramPoint>> pts(f.max_dim);

    std::vector<char> cleared(total, 0);
    std::vector<std::int32_t> pivot_owner(total, -1);  // rev row -> owning column position

    std::vector<std::vector<std::int32_t>> by_dim(f.max_dim + 1);
    for (std::size_t i = 0; i < total; ++i)
        by_dim[f.entries[i].dim].push_back(static_cast<std::int32_t>(i));

    std::vector<PersistenceDiagram> out;
    out.push_back(zero_dim_diagram(f, cleared));

    for (int q = 1; q < f.max_dim; ++q) {
        const auto& cols = by_dim[q];
        const auto& cofs = by_dim[q + 1];

        // CSR cofacet lists: for every (q+1)-simplex, register its rev
        // position with each q-face. Filled in increasing filtration order,
        // so each list ends up sorted by descending rev position.
        std::vector<std::int32_t> col_index(total, -1);
        for (std::size_t c = 0; c < cols.size(); ++c) col_index[cols[c]] = static_cast<std::int32_t>(c);
        std::vector<std::int32_t> counts(cols.size() + 1, 0);
        auto for_each_face = [&](const Filtration::Entry& e, auto&& fn) {
            for (int skip = 0; skip <= e.dim; ++skip) {
                std::array<std::int32_t, 4> face{-1, -1, -1, -1};
                int w = 0;
                for (int i = 0; i <= e.dim; ++i)
                    if (i != skip) face[w++] = e.v[i];
                std::int64_t pos = f.position(e.dim - 1, face);
                if (pos < 0) throw std::logic_error("face missing from filtration");
                fn(col_index[pos]);
            }
        };
        for (std::int32_t pos : cofs)
            for_each_face(f.entries[pos], [&](std::int32_t c) { ++counts[c + 1]; });
        for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
        std::vector<std::int32_t> csr(counts.back());
        std::vector<std::int32_t> cursor(counts.begin(), counts.end() - 1);
        for (std::int32_t pos : cofs)
            for_each_face(f.entries[pos],
                          [&](std::int32_t c) { csr[cursor[c]++] = n_total - 1 - pos; });

        std::vector<std::vector<std::int32_t>> columns(cols.size());
        std::vector<std::int32_t> col;
        // anti-transposed order: youngest q-simplices first
        for (std::size_t ci = cols.size(); ci-- > 0;) {
            std::int32_t pos = cols[ci];
            if (cleared[pos]) continue;  // death of a (q-1)-class, column vanishes
            col.assign(csr.begin() + counts[ci], csr.begin() + counts[ci + 1]);
            std::reverse(col.begin(), col.end());  // ascending rev positions
            while (!col.empty()) {
                std::int32_t low = col.back();
                std::int32_t owner = pivot_owner[low];
                if (owner < 0) break;
                add_column(col, columns[owner]);
            }
            if (col.empty()) {  // a cocycle never killed: essential q-class
                pts[q].push_back({f.entries[pos].scale, kInf});
                continue;
            }
            std::int32_t low = col.back();
            pivot_owner[low] = static_cast<std::int32_t>(ci);
            columns[ci] = std::move(col);
            col = {};
            // pair: this q-simplex is born at `pos`, killed by the oldest
            // cofacet in its reduced column
            std::int32_t death_pos = n_total - 1 - low;
            cleared[death_pos] = 1;
            double birth = f.entries[pos].scale, death = f.entries[death_pos].scale;
            if (birth != death) pts[q].push_back({birth, death});
        }
    }

    for (int p = 1; p < f.max_dim; ++p)
        out.push_back(PersistenceDiagram(p, std::move(pts[p])));
    return out;
}

PersistenceDiagram persistence(const Filtration& f, int p) {
    if (p < 0 || p >= f.max_dim)
        throw std::invalid_argument("homology degree must satisfy 0 <= p < max_dim");
    return persistence_all(f)[p];
}

}  // namespace fpd
