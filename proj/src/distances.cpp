#include "fpd/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpd {

double wasserstein2(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    return std::sqrt(hungarian(augment(d1, d2)).cost);
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    if (!d1.all_finite() || !d2.all_finite())
        throw std::invalid_argument("bottleneck requires capped diagrams");
    std::vector<double> candidates{0.0};
    for (const auto& p : d1.points()) candidates.push_back(detail::linf_to_diagonal(p));
    for (const auto& q : d2.points()) candidates.push_back(detail::linf_to_diagonal(q));
    for (const auto& p : d1.points())
        for (const auto& q : d2.points()) candidates.push_back(detail::linf(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // smallest candidate eps admitting a perfect matching
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (bottleneck_feasible(d1, d2, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double sliced_wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                          int directions) {
    if (directions < 1) throw std::invalid_argument("directions must be >= 1");
    if (!d1.all_finite() || !d2.all_finite())
        throw std::invalid_argument("sliced_wasserstein requires capped diagrams");
    const auto& a = d1.points();
    const auto& b = d2.points();
    const std::size_t n = a.size() + b.size();
    if (n == 0) return 0.0;

    auto diag = [](const DiagramPoint& p) {
        double m = 0.5 * (p.birth + p.death);
        return DiagramPoint{m, m};
    };

    std::vector<double> pa(n), pb(n);
    double total = 0.0;
    for (int k = 0; k < directions; ++k) {
        double theta = -std::numbers::pi / 2.0 + std::numbers::pi * k / directions;
        double cx = std::cos(theta), cy = std::sin(theta);
        auto proj = [&](const DiagramPoint& p) { return cx * p.birth + cy * p.death; };
        std::size_t w = 0;
        for (const auto& p : a) pa[w++] = proj(p);
        for (const auto& q : b) pa[w++] = proj(diag(q));
        w = 0;
        for (const auto& q : b) pb[w++] = proj(q);
        for (const auto& p : a) pb[w++] = proj(diag(p));
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        double w1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) w1 += std::fabs(pa[i] - pb[i]);
        total += w1;
    }
    return total / directions;
}

double corpus_max_persistence(const std::vector<PersistenceDiagram>& corpus) {
    double m = 0.0;
    for (const auto& d : corpus)
        for (const auto& p : d.points())
            if (p.finite()) m = std::max(m, p.persistence());
    return m;
}

PersistenceImageGrid PersistenceImageGrid::from_corpus(
    const std::vector<PersistenceDiagram>& corpus, int resolution, double bandwidth) {
    if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
    PersistenceImageGrid g;
    g.resolution = resolution;
    bool any = false;
    for (const auto& d : corpus)
        for (const auto& p : d.points()) {
            if (!p.finite()) throw std::invalid_argument("persistence image requires capped diagrams");
            double pers = p.persistence();
            if (!any) {
                g.birth_lo = g.birth_hi = p.birth;
                g.pers_lo = g.pers_hi = pers;
                any = true;
            } else {
                g.birth_lo = std::min(g.birth_lo, p.birth);
                g.birth_hi = std::max(g.birth_hi, p.birth);
                g.pers_lo = std::min(g.pers_lo, pers);
                g.pers_hi = std::max(g.pers_hi, pers);
            }
            g.max_persistence = std::max(g.max_persistence, pers);
        }
    if (!any) throw std::invalid_argument("empty corpus bounding box for persistence image");
    // persistence occupies [0, max], so the corpus persistence range is the
    // max persistence
    g.bandwidth = bandwidth > 0.0 ? bandwidth : 0.1 * g.max_persistence;
    if (g.bandwidth <= 0.0) g.bandwidth = 0.1;
    g.birth_lo -= g.bandwidth;
    g.birth_hi += g.bandwidth;
    g.pers_lo -= g.bandwidth;
    g.pers_hi += g.bandwidth;
    return g;
}

std::vector<double> persistence_image(const PersistenceDiagram& d,
                                      const PersistenceImageGrid& g) {
    const int res = g.resolution;
    std::vector<double> img(static_cast<std::size_t>(res) * res, 0.0);
    if (d.empty()) return img;
    const double wx = (g.birth_hi - g.birth_lo) / res;
    const double wy = (g.pers_hi - g.pers_lo) / res;
    const double s = g.bandwidth * std::numbers::sqrt2;
    // Gaussian mass over an axis-aligned cell factorizes into erf terms.
    auto mass_1d = [s](double lo, double hi, double mu) {
        return 0.5 * (std::erf((hi - mu) / s) - std::erf((lo - mu) / s));
    };
    for (const auto& p : d.points()) {
        double pers = p.persistence();
        double w = g.max_persistence > 0.0 ? pers / g.max_persistence : 0.0;
        for (int iy = 0; iy < res; ++iy) {
            double y0 = g.pers_lo + iy * wy;
            double my = mass_1d(y0, y0 + wy, pers);
            for (int ix = 0; ix < res; ++ix) {
                double x0 = g.birth_lo + ix * wx;
                img[static_cast<std::size_t>(iy) * res + ix] += w * my * mass_1d(x0, x0 + wx, p.birth);
            }
        }
    }
    return img;
}

double pi_l2(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
             const PersistenceImageGrid& grid) {
    auto a = persistence_image(d1, grid);
    auto b = persistence_image(d2, grid);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

double heat_kernel_value(const PersistenceDiagram& f, const PersistenceDiagram& g, double t) {
    double s = 0.0;
    const double inv = 1.0 / (8.0 * t);
    for (const auto& p : f.points())
        for (const auto& q : g.points()) {
            double db = p.birth - q.birth, dd = p.death - q.death;
            double direct = db * db + dd * dd;
            // q mirrored across the diagonal
            double mb = p.birth - q.death, md = p.death - q.birth;
            double mirrored = mb * mb + md * md;
            s += std::exp(-direct * inv) - std::exp(-mirrored * inv);
        }
    return s / (8.0 * std::numbers::pi * t);
}

}  // namespace

double heat_kernel_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                            double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat kernel time must be > 0");
    if (!d1.all_finite() || !d2.all_finite())
        throw std::invalid_argument("heat kernel requires capped diagrams");
    double radicand = heat_kernel_value(d1, d1, t) + heat_kernel_value(d2, d2, t) -
                      2.0 * heat_kernel_value(d1, d2, t);
    if (radicand < -1e-12)
        throw std::runtime_error("heat kernel distance: negative squared distance " +
                                 std::to_string(radicand));
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

DistanceKind parse_distance_kind(const std::string& name) {
    if (name == "w2" || name == "wasserstein2") return DistanceKind::wasserstein2;
    if (name == "bottleneck") return DistanceKind::bottleneck;
    if (name == "sw" || name == "sliced") return DistanceKind::sliced_wasserstein;
    if (name == "pi" || name == "image") return DistanceKind::persistence_image_l2;
    if (name == "heat") return DistanceKind::heat_kernel;
    throw std::invalid_argument("unknown distance kind '" + name +
                                "' (expected w2|bottleneck|sw|pi|heat)");
}

std::string distance_kind_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::wasserstein2: return "w2";
        case DistanceKind::bottleneck: return "bottleneck";
        case DistanceKind::sliced_wasserstein: return "sw";
        case DistanceKind::persistence_image_l2: return "pi";
        case DistanceKind::heat_kernel: return "heat";
    }
    return "?";
}

DiagramMetric resolve_metric(const DistanceSpec& spec,
                             const std::vector<PersistenceDiagram>& corpus) {
    switch (spec.kind) {
        case DistanceKind::wasserstein2:
            return [](const PersistenceDiagram& a, const PersistenceDiagram& b) {
                return wasserstein2(a, b);
            };
        case DistanceKind::bottleneck:
            return [](const PersistenceDiagram& a, const PersistenceDiagram& b) {
                return bottleneck(a, b);
            };
        case DistanceKind::sliced_wasserstein:
            return [n = spec.directions](const PersistenceDiagram& a, const PersistenceDiagram& b) {
                return sliced_wasserstein(a, b, n);
            };
        case DistanceKind::persistence_image_l2: {
            auto grid = PersistenceImageGrid::from_corpus(corpus, spec.resolution, spec.bandwidth);
            return [grid](const PersistenceDiagram& a, const PersistenceDiagram& b) {
                return pi_l2(a, b, grid);
            };
        }
        case DistanceKind::heat_kernel: {
            double t = spec.heat_time;
            if (t <= 0.0) {
                double r = corpus_max_persistence(corpus);
                t = 0.1 * r * r;
                if (t <= 0.0) t = 0.1;
            }
            return [t](const PersistenceDiagram& a, const PersistenceDiagram& b) {
                return heat_kernel_distance(a, b, t);
            };
        }
    }
    throw std::logic_error("unreachable distance kind");
}

}  // namespace fpd
