#include "fpd/datagen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fpd {

namespace {

// explicit draws keep generated clouds identical across standard libraries
class SeededDraws {
public:
    explicit SeededDraws(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }  // [0, 1)
    double gaussian() {  // Box-Muller
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

PointCloud generate(const ShapeSpec& spec) {
    if (spec.n_points < 1) throw std::invalid_argument("n_points must be >= 1");
    if (spec.noise_sigma < 0.0) throw std::invalid_argument("noise_sigma must be >= 0");
    SeededDraws rng(spec.seed);
    PointCloud pc;
    pc.dim = 2;
    pc.label = shape_kind_name(spec.kind);
    const int n = spec.n_points;
    switch (spec.kind) {
        case ShapeKind::noise:
            for (int i = 0; i < n; ++i) pc.points.push_back({rng.uniform(), rng.uniform(), 0.0});
            break;
        case ShapeKind::ring:
            for (int i = 0; i < n; ++i) {
                double a = 2.0 * std::numbers::pi * i / n;
                double x = 0.5 + 0.35 * std::cos(a);
                double y = 0.5 + 0.35 * std::sin(a);
                if (spec.noise_sigma > 0.0) {
                    x += spec.noise_sigma * rng.gaussian();
                    y += spec.noise_sigma * rng.gaussian();
                }
                pc.points.push_back({x, y, 0.0});
            }
            break;
        case ShapeKind::figure_eight: {
            const double r = 0.18;
            const int left = (n + 1) / 2;
            for (int i = 0; i < n; ++i) {
                bool on_left = i < left;
                int m = on_left ? left : n - left;
                int idx = on_left ? i : i - left;
                double a = 2.0 * std::numbers::pi * idx / m;
                double cx = on_left ? 0.5 - r : 0.5 + r;  // tangent at (0.5, 0.5)
                double x = cx + r * std::cos(a);
                double y = 0.5 + r * std::sin(a);
                if (spec.noise_sigma > 0.0) {
                    x += spec.noise_sigma * rng.gaussian();
                    y += spec.noise_sigma * rng.gaussian();
                }
                pc.points.push_back({x, y, 0.0});
            }
            break;
        }
    }
    return pc;
}

ShapeKind parse_shape_kind(const std::string& name) {
    if (name == "noise") return ShapeKind::noise;
    if (name == "ring") return ShapeKind::ring;
    if (name == "figure_eight" || name == "fig8") return ShapeKind::figure_eight;
    throw std::invalid_argument("unknown shape '" + name + "' (expected noise|ring|figure_eight)");
}

std::string shape_kind_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::noise: return "noise";
        case ShapeKind::ring: return "ring";
        case ShapeKind::figure_eight: return "figure_eight";
    }
    return "?";
}

namespace {

int axis_index(char axis) {
    switch (axis) {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
    }
    throw std::invalid_argument(std::string("bad axis '") + axis + "'");
}

// exact values at multiples of 90 degrees so lattice symmetries stay bitwise
void snapped_sincos(double angle, double& s, double& c) {
    const double quarter = std::numbers::pi / 2.0;
    double q = angle / quarter;
    double qr = std::round(q);
    if (std::fabs(q - qr) < 1e-12) {
        int m = static_cast<int>(qr) & 3;
        if (m < 0) m += 4;
        const double ss[4] = {0.0, 1.0, 0.0, -1.0};
        const double cc[4] = {1.0, 0.0, -1.0, 0.0};
        s = ss[m];
        c = cc[m];
        return;
    }
    s = std::sin(angle);
    c = std::cos(angle);
}

}  // namespace

PointCloud transform(const PointCloud& pc, const TransformSpec& t) {
    PointCloud out = pc;
    switch (t.kind) {
        case TransformKind::none:
            break;
        case TransformKind::rotate: {
            int ax = axis_index(t.axis);
            if (pc.dim == 2 && ax != 2)
                throw std::invalid_argument("2-d clouds rotate about z only");
            if (pc.dim == 1) throw std::invalid_argument("cannot rotate a 1-d cloud");
            int u = (ax + 1) % 3, v = (ax + 2) % 3;
            double s, c;
            snapped_sincos(t.angle, s, c);
            for (auto& p : out.points) {
                double a = p[u], b = p[v];
                p[u] = c * a - s * b;
                p[v] = s * a + c * b;
            }
            break;
        }
        case TransformKind::reflect: {
            int ax = axis_index(t.axis);
            if (ax >= pc.dim) throw std::invalid_argument("reflect axis outside cloud dimension");
            for (auto& p : out.points) p[ax] = -p[ax];
            break;
        }
        case TransformKind::translate:
            for (auto& p : out.points)
                for (int k = 0; k < pc.dim; ++k) p[k] += t.vec[k];
            break;
    }
    return out;
}

TransformSpec parse_transform(const std::string& text) {
    TransformSpec t;
    if (text == "none") return t;
    auto first = text.find(':');
    std::string head = first == std::string::npos ? text : text.substr(0, first);
    std::string rest = first == std::string::npos ? "" : text.substr(first + 1);
    if (head == "rotate") {
        auto second = rest.find(':');
        if (rest.size() < 3 || second == std::string::npos)
            throw std::invalid_argument("expected rotate:<axis>:<degrees>");
        t.kind = TransformKind::rotate;
        t.axis = rest[0];
        t.angle = std::stod(rest.substr(second + 1)) * std::numbers::pi / 180.0;
        axis_index(t.axis);
        return t;
    }
    if (head == "reflect") {
        if (rest.size() != 1) throw std::invalid_argument("expected reflect:<axis>");
        t.kind = TransformKind::reflect;
        t.axis = rest[0];
        axis_index(t.axis);
        return t;
    }
    if (head == "translate") {
        t.kind = TransformKind::translate;
        std::stringstream ss(rest);
        std::string field;
        int i = 0;
        while (std::getline(ss, field, ',')) {
            if (i >= 3) throw std::invalid_argument("translate takes at most 3 coordinates");
            t.vec[i++] = std::stod(field);
        }
        if (i == 0) throw std::invalid_argument("expected translate:<dx>[,<dy>[,<dz>]]");
        return t;
    }
    throw std::invalid_argument("unknown transform '" + text + "'");
}

PointCloud synth_lattice(LatticeKind kind, int cells_per_axis, double a) {
    if (cells_per_axis < 1) throw std::invalid_argument("cells_per_axis must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("lattice constant must be > 0");
    PointCloud pc;
    pc.dim = 3;
    pc.label = kind == LatticeKind::bcc ? "bcc" : "fcc";
    const int c = cells_per_axis;
    for (int i = 0; i <= c; ++i)
        for (int j = 0; j <= c; ++j)
            for (int k = 0; k <= c; ++k) pc.points.push_back({a * i, a * j, a * k});
    if (kind == LatticeKind::bcc) {
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j)
                for (int k = 0; k < c; ++k)
                    pc.points.push_back({a * (i + 0.5), a * (j + 0.5), a * (k + 0.5)});
    } else {
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j)
                for (int k = 0; k <= c; ++k) pc.points.push_back({a * (i + 0.5), a * (j + 0.5), a * k});
        for (int i = 0; i < c; ++i)
            for (int j = 0; j <= c; ++j)
                for (int k = 0; k < c; ++k) pc.points.push_back({a * (i + 0.5), a * j, a * (k + 0.5)});
        for (int i = 0; i <= c; ++i)
            for (int j = 0; j < c; ++j)
                for (int k = 0; k < c; ++k) pc.points.push_back({a * i, a * (j + 0.5), a * (k + 0.5)});
    }
    return pc;
}

LatticeKind parse_lattice_kind(const std::string& name) {
    if (name == "bcc") return LatticeKind::bcc;
    if (name == "fcc") return LatticeKind::fcc;
    throw std::invalid_argument("unknown lattice '" + name + "' (expected bcc|fcc)");
}

}  // namespace fpd
