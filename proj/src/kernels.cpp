#include "fpd/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fpd {

namespace {
int g_max_threads = 0;
}

void set_max_threads(int threads) {
    g_max_threads = threads < 0 ? 0 : threads;
#ifdef _OPENMP
    if (g_max_threads > 0) omp_set_num_threads(g_max_threads);
#endif
}

int max_threads() {
#ifdef _OPENMP
    return g_max_threads > 0 ? g_max_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<double> pairwise_distances_serial(const PointCloud& pc) {
    const std::size_t n = pc.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::sqrt(squared_distance(pc, i, j));
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return d;
}

std::vector<double> pairwise_distances(const PointCloud& pc) {
    const std::size_t n = pc.size();
    std::vector<double> d(n * n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::sqrt(squared_distance(pc, i, j));
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return d;
}

std::vector<double> distance_matrix_serial(const std::vector<PersistenceDiagram>& rows,
                                           const std::vector<PersistenceDiagram>& cols,
                                           const DiagramMetric& metric) {
    std::vector<double> d(rows.size() * cols.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            d[i * cols.size() + j] = metric(rows[i], cols[j]);
    return d;
}

std::vector<double> distance_matrix(const std::vector<PersistenceDiagram>& rows,
                                    const std::vector<PersistenceDiagram>& cols,
                                    const DiagramMetric& metric) {
    const std::size_t nr = rows.size(), nc = cols.size();
    std::vector<double> d(nr * nc, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(nr * nc); ++idx) {
        std::size_t i = static_cast<std::size_t>(idx) / nc;
        std::size_t j = static_cast<std::size_t>(idx) % nc;
        d[idx] = metric(rows[i], cols[j]);
    }
    return d;
}

}  // namespace fpd
