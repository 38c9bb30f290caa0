#include "fpd/fuzzy_cmeans.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "fpd/kernels.hpp"

namespace fpd {

std::size_t MembershipMatrix::argmax_row(std::size_t j) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < c; ++k)
        if (at(j, k) > at(j, best)) best = k;
    return best;
}

MembershipMatrix memberships_from_distances(const std::vector<double>& dist, std::size_t n,
                                            std::size_t c, MembershipExponent exponent) {
    if (dist.size() != n * c) throw std::invalid_argument("distance matrix size mismatch");
    MembershipMatrix m;
    m.n = n;
    m.c = c;
    m.values.assign(n * c, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double* dj = &dist[j * c];
        std::size_t zero = c;
        for (std::size_t k = 0; k < c; ++k)
            if (dj[k] == 0.0) {
                zero = k;
                break;
            }
        if (zero < c) {  // coincides with a centre: all mass on the first such cluster
            m.at(j, zero) = 1.0;
            continue;
        }
        for (std::size_t k = 0; k < c; ++k) {
            double sum = 0.0;
            for (std::size_t l = 0; l < c; ++l) {
                double ratio = dj[k] / dj[l];
                sum += exponent == MembershipExponent::j_minimizing ? ratio * ratio : ratio;
            }
            m.at(j, k) = 1.0 / sum;
        }
    }
    return m;
}

double clustering_cost(const std::vector<double>& dist, const MembershipMatrix& m) {
    double j_cost = 0.0;
    for (std::size_t j = 0; j < m.n; ++j)
        for (std::size_t k = 0; k < m.c; ++k) {
            double r = m.at(j, k), d = dist[j * m.c + k];
            j_cost += r * r * d * d;
        }
    return j_cost;
}

MembershipMatrix update_memberships(const DiagramSet& ds,
                                    const std::vector<PersistenceDiagram>& centres,
                                    const FcmConfig& cfg) {
    if (centres.empty()) throw std::invalid_argument("no centres");
    auto metric = resolve_metric(cfg.distance, ds.diagrams);
    auto dist = distance_matrix(ds.diagrams, centres, metric);
    return memberships_from_distances(dist, ds.size(), centres.size(), cfg.exponent);
}

namespace {

std::vector<PersistenceDiagram> update_centres_impl(const DiagramSet& ds,
                                                    const MembershipMatrix& memberships,
                                                    const FcmConfig& cfg,
                                                    const std::vector<PersistenceDiagram>& previous,
                                                    long* wfm_iterations, int* wfm_calls) {
    const std::size_t n = ds.size(), c = memberships.c;
    if (memberships.n != n) throw std::invalid_argument("membership matrix size mismatch");
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ull);
    std::vector<PersistenceDiagram> centres(c);
    for (std::size_t k = 0; k < c; ++k) {
        WeightedMeanProblem p;
        p.diagrams = ds.diagrams;
        p.weights.resize(n);
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double r = memberships.at(j, k);
            p.weights[j] = r * r;
            total += p.weights[j];
        }
        if (total <= 0.0) {
            // cluster owns nothing; keep it where it was
            if (k < previous.size()) centres[k] = previous[k];
            continue;
        }
        PersistenceDiagram init =
            k < previous.size() ? previous[k] : sample_init(p, rng);
        MeanState ms = weighted_frechet_mean(p, init, cfg.mean_max_iter);
        centres[k] = std::move(ms.mean);
        if (wfm_iterations) *wfm_iterations += ms.iterations;
        if (wfm_calls) ++*wfm_calls;
    }
    return centres;
}

}  // namespace

std::vector<PersistenceDiagram> update_centres(const DiagramSet& ds,
                                               const MembershipMatrix& memberships,
                                               const FcmConfig& cfg,
                                               const std::vector<PersistenceDiagram>& previous) {
    return update_centres_impl(ds, memberships, cfg, previous, nullptr, nullptr);
}

namespace {

// Fisher-Yates with explicit modulo draws: deterministic for a given seed on
// every platform.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
    return idx;
}

std::vector<PersistenceDiagram> initial_centres(const DiagramSet& ds, std::size_t c,
                                                std::mt19937_64& rng) {
    auto order = shuffled_indices(ds.size(), rng);
    std::vector<std::size_t> picked;
    for (std::size_t i : order) {  // prefer content-distinct diagrams
        if (picked.size() == c) break;
        bool dup = std::any_of(picked.begin(), picked.end(), [&](std::size_t p) {
            return ds.diagrams[p] == ds.diagrams[i];
        });
        if (!dup) picked.push_back(i);
    }
    for (std::size_t i : order) {
        if (picked.size() == c) break;
        if (std::find(picked.begin(), picked.end(), i) == picked.end()) picked.push_back(i);
    }
    std::vector<PersistenceDiagram> centres;
    for (std::size_t rank = 0; rank < picked.size(); ++rank) {
        const auto& d = ds.diagrams[picked[rank]];
        bool dup = false;
        for (std::size_t prev = 0; prev < rank; ++prev)
            dup = dup || ds.diagrams[picked[prev]] == d;
        if (dup && !d.empty()) {
            // duplicate content: nudge one death value to break the symmetry
            auto pts = d.points();
            pts.back().death += 1e-6;
            centres.emplace_back(d.dim(), std::move(pts), d.cap());
        } else {
            centres.push_back(d);
        }
    }
    return centres;
}

}  // namespace

ClusterState cluster(const DiagramSet& ds, const FcmConfig& cfg) {
    const std::size_t n = ds.size();
    const std::size_t c = static_cast<std::size_t>(cfg.c);
    if (cfg.c < 1) throw std::invalid_argument("c must be >= 1");
    if (n < c) throw std::invalid_argument("need at least c diagrams");
    if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    for (const auto& d : ds.diagrams)
        if (!d.all_finite()) throw std::invalid_argument("clustering requires capped diagrams");

    auto metric = resolve_metric(cfg.distance, ds.diagrams);
    std::mt19937_64 rng(cfg.seed);

    ClusterState state;
    state.centres = initial_centres(ds, c, rng);
    for (int t = 1; t <= cfg.max_iter; ++t) {
        auto t0 = std::chrono::steady_clock::now();
        auto dist = distance_matrix(ds.diagrams, state.centres, metric);
        state.seconds_distances +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        state.memberships = memberships_from_distances(dist, n, c, cfg.exponent);
        double j_cost = clustering_cost(dist, state.memberships);
        state.iterations = t;
        if (!state.cost_trace.empty()) {
            double prev = state.cost_trace.back();
            bool stable = std::fabs(j_cost - prev) <= cfg.convergence_tol * std::fabs(prev);
            state.converged = stable;
            if (stable && state.converged_at == 0) state.converged_at = t;
        }
        state.cost_trace.push_back(j_cost);
        if (state.converged && cfg.stop_on_convergence) break;
        if (t < cfg.max_iter) {
            auto t1 = std::chrono::steady_clock::now();
            state.centres = update_centres_impl(ds, state.memberships, cfg, state.centres,
                                                &state.wfm_iterations_total, &state.wfm_calls);
            state.seconds_means +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        }
    }
    return state;
}

std::vector<std::pair<std::string, double>> rank_by_centre(const ClusterState& state,
                                                           const PersistenceDiagram& query,
                                                           const DiagramSet& candidates,
                                                           std::size_t k,
                                                           const DistanceSpec& distance) {
    if (candidates.size() == 0) throw std::invalid_argument("empty candidate set");
    if (k > candidates.size()) throw std::invalid_argument("k exceeds candidate count");
    std::vector<PersistenceDiagram> corpus = candidates.diagrams;
    corpus.push_back(query);
    for (const auto& m : state.centres) corpus.push_back(m);
    auto metric = resolve_metric(distance, corpus);

    std::size_t best = 0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < state.centres.size(); ++i) {
        double d = metric(query, state.centres[i]);
        if (i == 0 || d < best_d) {
            best = i;
            best_d = d;
        }
    }
    const auto& centre = state.centres[best];
    std::vector<std::pair<std::string, double>> ranked(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(candidates.size()); ++i)
        ranked[i] = {candidates.names[i], metric(centre, candidates.diagrams[i])};
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    ranked.resize(k);
    return ranked;
}

namespace {

nlohmann::json diagram_to_json(const PersistenceDiagram& d) {
    nlohmann::json j;
    j["dim"] = d.dim();
    auto pts = nlohmann::json::array();
    for (const auto& p : d.points()) pts.push_back({p.birth, p.death});
    j["points"] = std::move(pts);
    if (d.cap()) j["cap"] = *d.cap();
    return j;
}

PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
    std::vector<DiagramPoint> pts;
    for (const auto& e : j.at("points")) pts.push_back({e[0].get<double>(), e[1].get<double>()});
    std::optional<double> cap;
    if (j.contains("cap") && !j.at("cap").is_null()) cap = j.at("cap").get<double>();
    return PersistenceDiagram(j.at("dim").get<int>(), std::move(pts), cap);
}

}  // namespace

void write_cluster_state(const ClusterState& state, const DiagramSet& ds,
                         const FcmConfig& cfg, const std::string& path) {
    nlohmann::json j;
    j["c"] = state.centres.size();
    j["distance"] = distance_kind_name(cfg.distance.kind);
    j["exponent"] = cfg.exponent == MembershipExponent::j_minimizing ? "jmin" : "literal";
    j["seed"] = cfg.seed;
    j["names"] = ds.names;
    j["dim"] = ds.diagrams.empty() ? 0 : ds.diagrams.front().dim();
    auto centres = nlohmann::json::array();
    for (const auto& m : state.centres) centres.push_back(diagram_to_json(m));
    j["centres"] = std::move(centres);
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < state.memberships.n; ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < state.memberships.c; ++k) row.push_back(state.memberships.at(r, k));
        rows.push_back(std::move(row));
    }
    j["memberships"] = std::move(rows);
    j["cost_trace"] = state.cost_trace;
    j["iterations"] = state.iterations;
    j["converged"] = state.converged;
    j["converged_at"] = state.converged_at;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

LoadedClusterState read_cluster_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    LoadedClusterState out;
    for (const auto& m : j.at("centres")) out.state.centres.push_back(diagram_from_json(m));
    const auto& rows = j.at("memberships");
    out.state.memberships.n = rows.size();
    out.state.memberships.c = out.state.centres.size();
    for (const auto& row : rows)
        for (const auto& v : row) out.state.memberships.values.push_back(v.get<double>());
    if (out.state.memberships.values.size() != out.state.memberships.n * out.state.memberships.c)
        throw std::runtime_error(path + ": ragged membership matrix");
    out.state.cost_trace = j.at("cost_trace").get<std::vector<double>>();
    out.state.iterations = j.at("iterations").get<int>();
    out.state.converged = j.at("converged").get<bool>();
    if (j.contains("converged_at")) out.state.converged_at = j.at("converged_at").get<int>();
    out.names = j.at("names").get<std::vector<std::string>>();
    out.dim = j.value("dim", 0);
    return out;
}

}  // namespace fpd
