#include "fpd/point_cloud.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpd {

double squared_distance(const PointCloud& pc, std::size_t i, std::size_t j) {
    const auto& a = pc.points[i];
    const auto& b = pc.points[j];
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

double cloud_diameter(const PointCloud& pc) {
    double best = 0.0;
    for (std::size_t i = 0; i < pc.size(); ++i)
        for (std::size_t j = i + 1; j < pc.size(); ++j)
            best = std::max(best, squared_distance(pc, i, j));
    return std::sqrt(best);
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::vector<double> parse_row(const std::string& line, const std::string& path, int lineno) {
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(field, &pos);
            row.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad coordinate '" + field + "'");
        }
    }
    return row;
}

}  // namespace

PointCloud read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    PointCloud pc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto row = parse_row(line, path, lineno);
        if (row.empty() || row.size() > 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 1-3 coordinates, got " + std::to_string(row.size()));
        if (pc.points.empty()) pc.dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != pc.dim)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": inconsistent point dimension");
        std::array<double, 3> p{0.0, 0.0, 0.0};
        std::copy(row.begin(), row.end(), p.begin());
        pc.points.push_back(p);
    }
    if (pc.points.empty()) throw std::runtime_error(path + ": empty point cloud");
    pc.label = std::filesystem::path(path).stem().string();
    return pc;
}

void write_point_cloud_csv(const PointCloud& pc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const auto& p : pc.points) {
        for (int k = 0; k < pc.dim; ++k) {
            if (k) out << ',';
            out << format_double(p[k]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

PointCloud read_point_cloud_xyz(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": missing atom count");
    long count = 0;
    try {
        count = std::stol(line);
    } catch (const std::exception&) {
        throw std::runtime_error(path + ":1: bad atom count '" + line + "'");
    }
    std::getline(in, line);  // comment line
    PointCloud pc;
    pc.dim = 3;
    int lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        std::stringstream ss(line);
        std::string element;
        double x, y, z;
        if (!(ss >> element)) continue;  // blank trailing line
        if (!(ss >> x >> y >> z))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected `El x y z`");
        pc.points.push_back({x, y, z});
    }
    if (static_cast<long>(pc.points.size()) != count)
        throw std::runtime_error(path + ": atom count " + std::to_string(count) + " but " +
                                 std::to_string(pc.points.size()) + " rows");
    if (pc.points.empty()) throw std::runtime_error(path + ": empty point cloud");
    pc.label = std::filesystem::path(path).stem().string();
    return pc;
}

PointCloud read_point_cloud(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".xyz") return read_point_cloud_xyz(path);
    if (ext == ".csv") return read_point_cloud_csv(path);
    throw std::runtime_error("cannot infer point-cloud format from '" + path +
                             "' (expected .csv or .xyz)");
}

}  // namespace fpd
