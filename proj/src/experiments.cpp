#include "fpd/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fpd/kernels.hpp"

namespace fpd {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ExemplarResult build_exemplar_corpus(const ExemplarConfig& cfg) {
    if (cfg.threads > 0) set_max_threads(cfg.threads);
    ExemplarResult out;
    auto t0 = std::chrono::steady_clock::now();
    struct Group {
        ShapeKind kind;
        int n;
        double sigma;
        int label;
    };
    const Group groups[3] = {
        {ShapeKind::noise, cfg.n_noise, 0.0, 0},
        {ShapeKind::ring, cfg.n_ring, cfg.sigma, 1},
        {ShapeKind::figure_eight, cfg.n_fig8, cfg.sigma, 2},
    };
    std::vector<PersistenceDiagram> raw;
    for (const auto& g : groups) {
        for (std::uint64_t s = 0; s < 3; ++s) {
            ShapeSpec spec{g.kind, g.n, g.sigma, cfg.cloud_seed_base + s};
            PointCloud pc = generate(spec);
            Filtration f = build_rips(pc, 2, cfg.rips_threshold);
            raw.push_back(persistence(f, 1));
            out.diagrams.names.push_back(shape_kind_name(g.kind) + "_" + std::to_string(s));
            out.labels.labels.push_back(g.label);
        }
    }
    double cap = default_cap(raw);
    for (auto& d : raw) out.diagrams.diagrams.push_back(d.all_finite() ? d : cap_infinities(d, cap));
    out.corpus_max_persistence = corpus_max_persistence(out.diagrams.diagrams);
    out.seconds_ph = seconds_since(t0);
    return out;
}

ExemplarResult run_exemplar(const ExemplarConfig& cfg) {
    ExemplarResult out = build_exemplar_corpus(cfg);
    FcmConfig fcm;
    fcm.c = 3;
    fcm.max_iter = cfg.max_iter;
    fcm.seed = cfg.cluster_seed;
    fcm.distance = cfg.distance;
    fcm.exponent = cfg.exponent;
    auto t0 = std::chrono::steady_clock::now();
    out.state = cluster(out.diagrams, fcm);
    out.seconds_cluster = seconds_since(t0);
    return out;
}

PersistenceDiagram random_diagram(int dim, int points, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto uniform = [&gen]() { return (gen() >> 11) * 0x1.0p-53; };
    std::vector<DiagramPoint> pts;
    pts.reserve(points);
    for (int i = 0; i < points; ++i) {
        double b = uniform();
        double pers = uniform();
        while (pers <= 0.0) pers = uniform();
        pts.push_back({b, b + pers});
    }
    return PersistenceDiagram(dim, std::move(pts));
}

DiagramSet random_diagram_set(int n, int points, std::uint64_t seed) {
    DiagramSet set;
    for (int j = 0; j < n; ++j) {
        set.diagrams.push_back(random_diagram(1, points, seed * 0x9e3779b97f4a7c15ull + j));
        set.names.push_back("random_" + std::to_string(j));
    }
    return set;
}

std::vector<ConvergenceCell> run_convergence(const ConvergenceConfig& cfg) {
    std::vector<ConvergenceCell> cells;
    for (int n : cfg.diagram_counts) {
        for (int pts : cfg.points_per_diagram) {
            for (std::uint64_t seed : cfg.seeds) {
                ConvergenceCell cell;
                cell.n_diagrams = n;
                cell.points = pts;
                cell.seed = seed;
                DiagramSet set = random_diagram_set(n, pts, seed + 1);
                FcmConfig fcm;
                fcm.c = cfg.c;
                fcm.max_iter = cfg.max_iter;
                fcm.seed = seed;
                fcm.convergence_tol = cfg.tol;
                fcm.stop_on_convergence = true;
                auto t0 = std::chrono::steady_clock::now();
                ClusterState state = cluster(set, fcm);
                cell.seconds = seconds_since(t0);
                cell.converged = state.converged_at > 0;
                cell.iterations_to_converge = state.converged_at;
                cell.mean_wfm_iterations =
                    state.wfm_calls > 0 ? double(state.wfm_iterations_total) / state.wfm_calls : 0.0;
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

std::vector<DistanceComparisonRow> run_distance_comparison(const ExemplarConfig& cfg) {
    ExemplarResult corpus = build_exemplar_corpus(cfg);
    const auto& diagrams = corpus.diagrams.diagrams;
    std::vector<DistanceComparisonRow> rows;
    const DistanceKind kinds[5] = {
        DistanceKind::wasserstein2, DistanceKind::bottleneck, DistanceKind::sliced_wasserstein,
        DistanceKind::persistence_image_l2, DistanceKind::heat_kernel};
    for (DistanceKind kind : kinds) {
        DistanceComparisonRow row;
        row.kind = kind;
        DistanceSpec spec = cfg.distance;
        spec.kind = kind;

        FcmConfig fcm;
        fcm.c = 3;
        fcm.max_iter = cfg.max_iter;
        fcm.seed = cfg.cluster_seed;
        fcm.distance = spec;
        fcm.exponent = cfg.exponent;
        ClusterState state = cluster(corpus.diagrams, fcm);
        row.rand_index = fuzzy_rand(state.memberships, corpus.labels);
        row.iterations = state.iterations;

        // mean seconds per pairwise evaluation over the full corpus square
        auto metric = resolve_metric(spec, diagrams);
        auto t0 = std::chrono::steady_clock::now();
        auto mat = distance_matrix_serial(diagrams, diagrams, metric);
        (void)mat;
        row.seconds_per_pair = seconds_since(t0) / double(diagrams.size() * diagrams.size());
        rows.push_back(row);
    }
    return rows;
}

namespace {

PointCloud lattice_copy(LatticeKind kind, const LatticeConfig& cfg, const std::string& regime,
                        int copy) {
    PointCloud pc = synth_lattice(kind, cfg.cells_per_axis, cfg.lattice_constant);
    if (regime == "none" || copy == 0) return pc;
    TransformSpec t;
    if (regime == "rotate") {
        t.kind = TransformKind::rotate;
        t.axis = copy == 1 ? 'x' : 'y';
        t.angle = std::numbers::pi;
    } else if (regime == "reflect") {
        t.kind = TransformKind::reflect;
        t.axis = copy == 1 ? 'x' : 'y';
    } else if (regime == "translate") {
        t.kind = TransformKind::translate;
        t.vec[2] = copy == 1 ? cfg.lattice_constant : -cfg.lattice_constant;
    } else {
        throw std::invalid_argument("unknown lattice regime '" + regime + "'");
    }
    return transform(pc, t);
}

}  // namespace

std::vector<LatticeResult> run_lattice(const LatticeConfig& cfg) {
    std::vector<LatticeResult> results;
    for (const std::string regime : {"none", "rotate", "reflect", "translate"}) {
        LatticeResult res;
        res.transform_name = regime;
        auto t0 = std::chrono::steady_clock::now();
        std::vector<PersistenceDiagram> raw;
        for (int group = 0; group < 2; ++group) {
            LatticeKind kind = group == 0 ? LatticeKind::bcc : LatticeKind::fcc;
            for (int copy = 0; copy < 3; ++copy) {
                PointCloud pc = lattice_copy(kind, cfg, regime, copy);
                Filtration f =
                    build_rips(pc, cfg.homology_dim + 1, cloud_diameter(pc), cfg.budget);
                raw.push_back(persistence(f, cfg.homology_dim));
                res.diagrams.names.push_back((group == 0 ? std::string("bcc_") : std::string("fcc_")) +
                                             std::to_string(copy + 1) + "_" + regime);
                res.labels.labels.push_back(group);
            }
        }
        double cap = default_cap(raw);
        for (auto& d : raw)
            res.diagrams.diagrams.push_back(d.all_finite() ? d : cap_infinities(d, cap));
        res.seconds_ph = seconds_since(t0);

        FcmConfig fcm;
        fcm.c = 2;
        fcm.max_iter = cfg.max_iter;
        fcm.seed = cfg.cluster_seed;
        res.state = cluster(res.diagrams, fcm);
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace fpd
