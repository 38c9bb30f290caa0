#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fpd {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One topological feature: the filtration scales at which it appears and
// disappears. death == +inf for features that never die below the threshold.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;

    double persistence() const { return death - birth; }
    bool finite() const { return std::isfinite(death); }

    friend bool operator==(const DiagramPoint& a, const DiagramPoint& b) {
        return a.birth == b.birth && a.death == b.death;
    }
    friend bool operator<(const DiagramPoint& a, const DiagramPoint& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    }
};

// Euclidean distance from a finite point to the diagonal {(a,a)}.
double distance_to_diagonal(const DiagramPoint& p);

// Multiset of birth/death points for one homology degree. The diagonal is
// implicit: never stored, always available as a matching partner. Points with
// zero persistence are identified with the diagonal and dropped on
// construction.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    // Validates birth <= death, drops zero-persistence points, sorts.
    PersistenceDiagram(int dim, std::vector<DiagramPoint> points,
                       std::optional<double> cap = std::nullopt);

    int dim() const { return dim_; }
    const std::vector<DiagramPoint>& points() const { return points_; }
    std::optional<double> cap() const { return cap_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    bool all_finite() const;
    // Largest finite death, or nullopt if every point is infinite or the
    // diagram is empty.
    std::optional<double> max_finite_death() const;

    friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
        return a.dim_ == b.dim_ && a.points_ == b.points_;
    }

private:
    int dim_ = 0;
    std::vector<DiagramPoint> points_;
    std::optional<double> cap_;
};

// Replaces infinite deaths by t and records t as the diagram's cap.
// Throws std::invalid_argument if t <= some finite death already present.
PersistenceDiagram cap_infinities(const PersistenceDiagram& d, double t);

// 2 * max finite death over the set; falls back to 1.0 when the set has no
// finite deaths (or they are all <= 0).
double default_cap(const std::vector<PersistenceDiagram>& diagrams);

// A named collection of diagrams sharing one homology degree.
struct DiagramSet {
    std::vector<PersistenceDiagram> diagrams;
    std::vector<std::string> names;

    std::size_t size() const { return diagrams.size(); }
};

enum class DiagramFormat { csv, json };

// Format from file extension (.csv / .json); anything else is an error.
DiagramFormat diagram_format_for_path(const std::string& path);

// CSV rows are `dim,birth,death` (header optional, `inf` allowed in death);
// JSON is {"dim": p, "points": [[b,d],...]}. A file may hold points of
// several dims; `dim` selects one, or may be omitted when the file is
// homogeneous. Parse errors report the offending line.
PersistenceDiagram read_diagram(const std::string& path, DiagramFormat format,
                                std::optional<int> dim = std::nullopt);
PersistenceDiagram read_diagram(const std::string& path,
                                std::optional<int> dim = std::nullopt);

void write_diagram(const PersistenceDiagram& d, const std::string& path,
                   DiagramFormat format);
void write_diagram(const PersistenceDiagram& d, const std::string& path);

// All .csv/.json files in a directory, sorted by filename.
DiagramSet read_diagram_dir(const std::string& dir, std::optional<int> dim = std::nullopt);

}  // namespace fpd
