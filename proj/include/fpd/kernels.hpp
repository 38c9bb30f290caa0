#pragma once

#include <functional>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/point_cloud.hpp"

namespace fpd {

// Diagram-to-diagram distance, resolved against a corpus (see distances.hpp).
using DiagramMetric = std::function<double(const PersistenceDiagram&, const PersistenceDiagram&)>;

// Caps the OpenMP thread count (0 = hardware default). The serial and
// parallel kernels write each output slot independently, so results are
// identical for every thread count.
void set_max_threads(int threads);
int max_threads();

// Full n x n Euclidean distance matrix of a point cloud, row-major.
std::vector<double> pairwise_distances(const PointCloud& pc);
std::vector<double> pairwise_distances_serial(const PointCloud& pc);

// rows.size() x cols.size() matrix of metric values, row-major.
std::vector<double> distance_matrix(const std::vector<PersistenceDiagram>& rows,
                                    const std::vector<PersistenceDiagram>& cols,
                                    const DiagramMetric& metric);
std::vector<double> distance_matrix_serial(const std::vector<PersistenceDiagram>& rows,
                                           const std::vector<PersistenceDiagram>& cols,
                                           const DiagramMetric& metric);

}  // namespace fpd
