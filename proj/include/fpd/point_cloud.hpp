#pragma once

#include <array>
#include <string>
#include <vector>

namespace fpd {

// Finite list of points in R^d (d <= 3 for homology computation). Stored as
// fixed 3-vectors; unused trailing coordinates are zero.
struct PointCloud {
    int dim = 0;
    std::vector<std::array<double, 3>> points;
    std::string label;

    std::size_t size() const { return points.size(); }
};

double squared_distance(const PointCloud& pc, std::size_t i, std::size_t j);
double cloud_diameter(const PointCloud& pc);

// CSV: one point per row, d columns (d in {1,2,3}), no header.
PointCloud read_point_cloud_csv(const std::string& path);
void write_point_cloud_csv(const PointCloud& pc, const std::string& path);

// .xyz lattice files: atom count, comment line, then `El x y z` rows.
// The element symbol is ignored.
PointCloud read_point_cloud_xyz(const std::string& path);

// Dispatch on extension (.csv / .xyz).
PointCloud read_point_cloud(const std::string& path);

}  // namespace fpd
