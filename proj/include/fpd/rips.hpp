#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/point_cloud.hpp"

namespace fpd {

// Vietoris-Rips filtration up to simplex dimension max_dim. Simplices are
// stored in filtration order: (scale, dimension, lexicographic vertex set).
// A simplex's scale is the maximum pairwise distance among its vertices;
// vertices enter at scale 0.
struct Filtration {
    struct Entry {
        double scale;
        std::array<std::int32_t, 4> v;  // ascending vertex ids, -1 padded
        std::int8_t dim;
    };

    int max_dim = 1;
    double threshold = 0.0;
    std::vector<Entry> entries;

    // Position of a simplex (by dim and ascending vertex ids) in `entries`.
    std::int64_t position(int dim, const std::array<std::int32_t, 4>& v) const;

    std::size_t size() const { return entries.size(); }

private:
    friend Filtration build_rips(const PointCloud&, int, double, std::size_t);
    void build_index();
    // per-dim packed vertex keys (sorted) and their entry positions
    std::vector<std::vector<std::uint64_t>> keys_;
    std::vector<std::vector<std::int32_t>> key_pos_;
};

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

// Every simplex of dimension <= max_dim (in {1,2,3}) with diameter <=
// threshold. Throws std::runtime_error when the count would exceed `budget`.
Filtration build_rips(const PointCloud& pc, int max_dim, double threshold,
                      std::size_t budget = kDefaultSimplexBudget);

// Persistence diagrams for all homology degrees 0..max_dim-1. Degree 0 uses
// union-find with the elder rule; higher degrees use boundary-matrix column
// reduction with the clearing optimization. Zero-persistence pairs are
// dropped; unpaired classes keep death = +inf.
std::vector<PersistenceDiagram> persistence_all(const Filtration& f);

// Single homology degree p (requires p < max_dim).
PersistenceDiagram persistence(const Filtration& f, int p);

}  // namespace fpd
