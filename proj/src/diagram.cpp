#include "fpd/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fpd {

namespace {

std::string format_double(double v) {
    if (v == kInf) return "inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

bool parse_double(std::string token, double& out) {
    // trim
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!token.empty() && issp(token.front())) token.erase(token.begin());
    while (!token.empty() && issp(token.back())) token.pop_back();
    if (token.empty()) return false;
    if (token == "inf" || token == "Inf" || token == "INF" || token == "infinity") {
        out = kInf;
        return true;
    }
    try {
        std::size_t pos = 0;
        out = std::stod(token, &pos);
        return pos == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

double distance_to_diagonal(const DiagramPoint& p) {
    return (p.death - p.birth) / std::sqrt(2.0);
}

PersistenceDiagram::PersistenceDiagram(int dim, std::vector<DiagramPoint> points,
                                       std::optional<double> cap)
    : dim_(dim), cap_(cap) {
    if (dim < 0) throw std::invalid_argument("homology degree must be >= 0");
    points_.reserve(points.size());
    for (const auto& p : points) {
        if (std::isnan(p.birth) || std::isnan(p.death))
            throw std::invalid_argument("diagram point with NaN coordinate");
        if (!std::isfinite(p.birth))
            throw std::invalid_argument("diagram point with non-finite birth");
        if (p.birth > p.death)
            throw std::invalid_argument("diagram point with birth > death");
        if (p.birth == p.death) continue;  // identified with the diagonal
        points_.push_back(p);
    }
    std::sort(points_.begin(), points_.end());
}

bool PersistenceDiagram::all_finite() const {
    return std::all_of(points_.begin(), points_.end(),
                       [](const DiagramPoint& p) { return p.finite(); });
}

std::optional<double> PersistenceDiagram::max_finite_death() const {
    std::optional<double> best;
    for (const auto& p : points_)
        if (p.finite() && (!best || p.death > *best)) best = p.death;
    return best;
}

PersistenceDiagram cap_infinities(const PersistenceDiagram& d, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("cap value must be finite");
    if (auto m = d.max_finite_death(); m && t <= *m)
        throw std::invalid_argument("cap value " + format_double(t) +
                                    " is not greater than the largest finite death " +
                                    format_double(*m));
    std::vector<DiagramPoint> pts = d.points();
    for (auto& p : pts)
        if (!p.finite()) p.death = t;
    return PersistenceDiagram(d.dim(), std::move(pts), t);
}

double default_cap(const std::vector<PersistenceDiagram>& diagrams) {
    double max_death = 0.0;
    bool seen = false;
    for (const auto& d : diagrams)
        if (auto m = d.max_finite_death()) {
            max_death = std::max(max_death, *m);
            seen = true;
        }
    if (!seen || max_death <= 0.0) return 1.0;
    return 2.0 * max_death;
}

DiagramFormat diagram_format_for_path(const std::string& path) {
    auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".csv") return DiagramFormat::csv;
    if (ext == ".json") return DiagramFormat::json;
    throw std::runtime_error("cannot infer diagram format from '" + path +
                             "' (expected .csv or .json)");
}

namespace {

PersistenceDiagram assemble(const std::string& path, std::optional<int> want_dim,
                            std::vector<int>& dims, std::vector<DiagramPoint>& pts,
                            std::optional<double> cap) {
    std::vector<DiagramPoint> keep;
    std::optional<int> dim = want_dim;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (want_dim && dims[i] != *want_dim) continue;
        if (!dim) dim = dims[i];
        if (dims[i] != *dim)
            throw std::runtime_error(path + ": contains multiple homology degrees; pass the wanted one");
        keep.push_back(pts[i]);
    }
    return PersistenceDiagram(dim.value_or(want_dim.value_or(0)), std::move(keep), cap);
}

PersistenceDiagram read_diagram_csv(const std::string& path, std::optional<int> want_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    std::vector<int> dims;
    std::vector<DiagramPoint> pts;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = line;
        stripped.erase(std::remove_if(stripped.begin(), stripped.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       stripped.end());
        if (stripped.empty()) continue;
        if (lineno == 1 && stripped == "dim,birth,death") continue;  // optional header
        std::stringstream ss(line);
        std::string f0, f1, f2, extra;
        if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
            std::getline(ss, extra, ','))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 3 fields `dim,birth,death`");
        double dimv, b, d;
        if (!parse_double(f0, dimv) || dimv < 0 || dimv != std::floor(dimv) || !std::isfinite(dimv))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad dim field '" + f0 + "'");
        if (!parse_double(f1, b))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad birth field '" + f1 + "'");
        if (!parse_double(f2, d))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad death field '" + f2 + "'");
        if (b > d)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": birth > death");
        dims.push_back(static_cast<int>(dimv));
        pts.push_back({b, d});
    }
    return assemble(path, want_dim, dims, pts, std::nullopt);
}

PersistenceDiagram read_diagram_json(const std::string& path, std::optional<int> want_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw std::runtime_error(path + ": expected {\"dim\": p, \"points\": [[b,d],...]}");
    int dim = j.at("dim").get<int>();
    if (want_dim && dim != *want_dim)
        throw std::runtime_error(path + ": has dim " + std::to_string(dim) + ", wanted " +
                                 std::to_string(*want_dim));
    std::vector<DiagramPoint> pts;
    for (const auto& e : j.at("points")) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error(path + ": each point must be [birth, death]");
        double b = e[0].get<double>();
        double d = e[1].is_null() ? kInf : e[1].get<double>();
        if (b > d) throw std::runtime_error(path + ": birth > death in point list");
        pts.push_back({b, d});
    }
    std::optional<double> cap;
    if (j.contains("cap") && !j.at("cap").is_null()) cap = j.at("cap").get<double>();
    return PersistenceDiagram(dim, std::move(pts), cap);
}

}  // namespace

PersistenceDiagram read_diagram(const std::string& path, DiagramFormat format,
                                std::optional<int> dim) {
    return format == DiagramFormat::csv ? read_diagram_csv(path, dim)
                                        : read_diagram_json(path, dim);
}

PersistenceDiagram read_diagram(const std::string& path, std::optional<int> dim) {
    return read_diagram(path, diagram_format_for_path(path), dim);
}

void write_diagram(const PersistenceDiagram& d, const std::string& path, DiagramFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    if (format == DiagramFormat::csv) {
        out << "dim,birth,death\n";
        for (const auto& p : d.points())
            out << d.dim() << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
    } else {
        nlohmann::json j;
        j["dim"] = d.dim();
        auto pts = nlohmann::json::array();
        for (const auto& p : d.points()) {
            if (p.finite())
                pts.push_back({p.birth, p.death});
            else
                pts.push_back({p.birth, nullptr});
        }
        j["points"] = std::move(pts);
        if (d.cap()) j["cap"] = *d.cap();
        out << j.dump(2) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_diagram(const PersistenceDiagram& d, const std::string& path) {
    write_diagram(d, path, diagram_format_for_path(path));
}

DiagramSet read_diagram_dir(const std::string& dir, std::optional<int> dim) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir + "' is not a directory");
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto ext = e.path().extension().string();
        if (ext == ".csv" || ext == ".json") paths.push_back(e.path().string());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw std::runtime_error("no .csv/.json diagrams in '" + dir + "'");
    DiagramSet set;
    for (const auto& p : paths) {
        set.diagrams.push_back(read_diagram(p, dim));
        set.names.push_back(fs::path(p).filename().string());
    }
    // A directory is a DiagramSet: one homology degree throughout.
    for (const auto& d : set.diagrams)
        if (d.dim() != set.diagrams.front().dim())
            throw std::runtime_error("diagrams in '" + dir + "' mix homology degrees; pass --dim");
    return set;
}

}  // namespace fpd
