// fpd: fuzzy c-means clustering for persistence diagrams.
//
// Subcommands: gen, gen-lattice, transform, compute-ph, dist, mean, cluster,
// rank, eval, experiment, plot. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 non-convergence (with --fail-on-nonconverged).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpd/datagen.hpp"
#include "fpd/diagram.hpp"
#include "fpd/distances.hpp"
#include "fpd/evaluation.hpp"
#include "fpd/experiments.hpp"
#include "fpd/frechet_mean.hpp"
#include "fpd/fuzzy_cmeans.hpp"
#include "fpd/kernels.hpp"
#include "fpd/point_cloud.hpp"
#include "fpd/rips.hpp"
#include "fpd/svg.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string g_subcommand;
std::vector<std::string> g_argv;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t seed_or_env(std::uint64_t seed, bool seed_given) {
    if (seed_given) return seed;
    if (const char* env = std::getenv("FPD_SEED")) return std::strtoull(env, nullptr, 10);
    return seed;
}

// Manifest next to the primary output of a run.
void write_manifest(const std::string& output, std::uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::map<std::string, double>& timings) {
    nlohmann::json j;
    j["tool"] = "fpd";
    j["version"] = kVersion;
    j["subcommand"] = g_subcommand;
    j["argv"] = g_argv;
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["timings_seconds"] = timings;
    std::string path = fs::is_directory(output) ? (fs::path(output) / "manifest.json").string()
                                                : output + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& paths,
                                       const std::vector<std::string>& extensions) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(p)) {
                if (!e.is_regular_file()) continue;
                auto ext = e.path().extension().string();
                for (const auto& want : extensions)
                    if (ext == want) found.push_back(e.path().string());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(p);
        }
    }
    if (files.empty()) throw std::runtime_error("no inputs");
    return files;
}

fpd::DiagramSet load_diagrams(const std::vector<std::string>& paths, std::optional<int> dim) {
    auto files = expand_inputs(paths, {".csv", ".json"});
    fpd::DiagramSet set;
    for (const auto& f : files) {
        set.diagrams.push_back(fpd::read_diagram(f, dim));
        set.names.push_back(fs::path(f).filename().string());
    }
    for (const auto& d : set.diagrams)
        if (d.dim() != set.diagrams.front().dim())
            throw std::runtime_error("inputs mix homology degrees; pass --dim");
    return set;
}

// caps every diagram in place with an explicit T or the set-wide default
double cap_set(std::vector<fpd::PersistenceDiagram>& diagrams, double cap_flag) {
    double t = cap_flag > 0.0 ? cap_flag : fpd::default_cap(diagrams);
    for (auto& d : diagrams)
        if (!d.all_finite()) d = fpd::cap_infinities(d, t);
    return t;
}

void write_membership_csv(const std::string& path, const fpd::DiagramSet& ds,
                          const fpd::ClusterState& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "name";
    for (std::size_t k = 0; k < state.memberships.c; ++k) out << ",cluster_" << k + 1;
    out << ",argmax\n";
    for (std::size_t j = 0; j < state.memberships.n; ++j) {
        out << ds.names[j];
        for (std::size_t k = 0; k < state.memberships.c; ++k)
            out << ',' << sig12(state.memberships.at(j, k));
        out << ',' << state.memberships.argmax_row(j) + 1 << '\n';
    }
}

int cmd_gen(const std::string& kind, int n, double sigma, std::uint64_t seed, bool seed_given,
            const std::string& output) {
    fpd::ShapeSpec spec;
    spec.kind = fpd::parse_shape_kind(kind);
    spec.n_points = n;
    spec.noise_sigma = sigma;
    spec.seed = seed_or_env(seed, seed_given);
    auto t0 = Clock::now();
    auto pc = fpd::generate(spec);
    fpd::write_point_cloud_csv(pc, output);
    write_manifest(output, spec.seed, {}, {{"generate", seconds_since(t0)}});
    return 0;
}

int cmd_gen_lattice(const std::string& kind, int cells, double a, const std::string& output) {
    auto t0 = Clock::now();
    auto pc = fpd::synth_lattice(fpd::parse_lattice_kind(kind), cells, a);
    fpd::write_point_cloud_csv(pc, output);
    write_manifest(output, 0, {}, {{"generate", seconds_since(t0)}});
    return 0;
}

int cmd_transform(const std::vector<std::string>& specs, const std::string& input,
                  const std::string& output) {
    auto t0 = Clock::now();
    auto pc = fpd::read_point_cloud(input);
    for (const auto& s : specs) pc = fpd::transform(pc, fpd::parse_transform(s));
    fpd::write_point_cloud_csv(pc, output);
    write_manifest(output, 0, {input}, {{"transform", seconds_since(t0)}});
    return 0;
}

int cmd_compute_ph(const std::vector<std::string>& inputs, int max_dim, double threshold,
                   double cap, bool no_cap, std::size_t budget, const std::string& outdir) {
    auto files = expand_inputs(inputs, {".csv", ".xyz"});
    fs::create_directories(outdir);
    auto t0 = Clock::now();
    double seconds_ph = 0.0;
    for (const auto& file : files) {
        auto pc = fpd::read_point_cloud(file);
        double thr = threshold > 0.0 ? threshold : fpd::cloud_diameter(pc);
        auto t1 = Clock::now();
        auto f = fpd::build_rips(pc, max_dim, thr, budget);
        auto diagrams = fpd::persistence_all(f);
        seconds_ph += seconds_since(t1);
        if (!no_cap) cap_set(diagrams, cap);
        auto stem = fs::path(file).stem().string();
        for (int p = 0; p < max_dim; ++p)
            fpd::write_diagram(
                diagrams[p],
                (fs::path(outdir) / (stem + "_ph" + std::to_string(p) + ".csv")).string());
    }
    write_manifest(outdir, 0, files, {{"ph", seconds_ph}, {"total", seconds_since(t0)}});
    return 0;
}

int cmd_dist(const std::string& kind, const std::string& a_path, const std::string& b_path,
             int directions, int resolution, double bandwidth, double heat_time, double cap) {
    fpd::DistanceSpec spec;
    spec.kind = fpd::parse_distance_kind(kind);
    spec.directions = directions;
    spec.resolution = resolution;
    spec.bandwidth = bandwidth;
    spec.heat_time = heat_time;
    std::vector<fpd::PersistenceDiagram> pair{fpd::read_diagram(a_path), fpd::read_diagram(b_path)};
    cap_set(pair, cap);
    auto metric = fpd::resolve_metric(spec, pair);
    std::cout << sig12(metric(pair[0], pair[1])) << "\n";
    return 0;
}

int cmd_mean(const std::string& weights_text, const std::vector<std::string>& inputs,
             const std::string& output, std::uint64_t seed, bool seed_given, int max_iter,
             double cap, bool fail_on_nonconverged) {
    auto t0 = Clock::now();
    auto set = load_diagrams(inputs, std::nullopt);
    fpd::WeightedMeanProblem p;
    p.diagrams = set.diagrams;
    if (weights_text.empty()) {
        p.weights.assign(set.size(), 1.0);
    } else {
        std::stringstream ss(weights_text);
        std::string field;
        while (std::getline(ss, field, ',')) p.weights.push_back(std::stod(field));
        if (p.weights.size() != set.size())
            throw std::runtime_error("got " + std::to_string(p.weights.size()) + " weights for " +
                                     std::to_string(set.size()) + " diagrams");
    }
    cap_set(p.diagrams, cap);
    std::mt19937_64 rng(seed_or_env(seed, seed_given));
    auto state = fpd::weighted_frechet_mean(p, fpd::sample_init(p, rng), max_iter);
    fpd::write_diagram(state.mean, output);
    std::cout << "frechet_value " << sig12(state.frechet_value) << "\n";
    std::cout << "iterations " << state.iterations
              << (state.converged ? " (converged)" : " (max-iter)") << "\n";
    write_manifest(output, seed_or_env(seed, seed_given), inputs, {{"mean", seconds_since(t0)}});
    if (!state.converged && fail_on_nonconverged) return 3;
    return 0;
}

int cmd_cluster(const std::vector<std::string>& inputs, int c, int max_iter, std::uint64_t seed,
                bool seed_given, const std::string& distance, const std::string& exponent,
                double tol, double cap, std::optional<int> dim, const std::string& output,
                bool fail_on_nonconverged, int directions, int resolution, double bandwidth,
                double heat_time) {
    auto t0 = Clock::now();
    auto set = load_diagrams(inputs, dim);
    cap_set(set.diagrams, cap);
    fpd::FcmConfig cfg;
    cfg.c = c;
    cfg.max_iter = max_iter;
    cfg.seed = seed_or_env(seed, seed_given);
    cfg.distance.kind = fpd::parse_distance_kind(distance);
    cfg.distance.directions = directions;
    cfg.distance.resolution = resolution;
    cfg.distance.bandwidth = bandwidth;
    cfg.distance.heat_time = heat_time;
    cfg.convergence_tol = tol;
    if (exponent == "jmin")
        cfg.exponent = fpd::MembershipExponent::j_minimizing;
    else if (exponent == "literal")
        cfg.exponent = fpd::MembershipExponent::paper_literal;
    else
        throw std::runtime_error("--exponent expects jmin|literal");
    auto state = fpd::cluster(set, cfg);
    fpd::write_cluster_state(state, set, cfg, output);
    std::cout << "J " << sig12(state.cost_trace.back()) << " after " << state.iterations
              << " iterations" << (state.converged ? " (converged)" : "") << "\n";
    write_manifest(output, cfg.seed, inputs,
                   {{"distances", state.seconds_distances},
                    {"means", state.seconds_means},
                    {"total", seconds_since(t0)}});
    if (!state.converged && fail_on_nonconverged) return 3;
    return 0;
}

int cmd_rank(const std::string& state_path, const std::string& query_path,
             const std::vector<std::string>& candidate_paths, int k, const std::string& distance) {
    auto loaded = fpd::read_cluster_state(state_path);
    auto query = fpd::read_diagram(query_path);
    auto candidates = load_diagrams(candidate_paths, std::nullopt);
    std::vector<fpd::PersistenceDiagram> all = candidates.diagrams;
    all.push_back(query);
    double cap = fpd::default_cap(all);
    for (auto& d : candidates.diagrams)
        if (!d.all_finite()) d = fpd::cap_infinities(d, cap);
    if (!query.all_finite()) query = fpd::cap_infinities(query, cap);
    fpd::DistanceSpec spec;
    spec.kind = fpd::parse_distance_kind(distance);
    auto ranked = fpd::rank_by_centre(loaded.state, query, candidates,
                                      static_cast<std::size_t>(k), spec);
    for (const auto& [name, d] : ranked) std::cout << name << " " << sig12(d) << "\n";
    return 0;
}

int cmd_eval(const std::string& state_path, const std::string& labels_path) {
    auto loaded = fpd::read_cluster_state(state_path);
    auto labels = fpd::read_labels_csv(labels_path);
    std::cout << sig12(fpd::fuzzy_rand(loaded.state.memberships, labels)) << "\n";
    return 0;
}

int cmd_plot(const std::string& kind, const std::string& input, const std::string& output) {
    if (kind == "diagram") {
        std::vector<fpd::PersistenceDiagram> per_dim;
        for (int p = 0; p < 4; ++p) {
            auto d = fpd::read_diagram(input, p);
            if (!d.empty() || p == 0) per_dim.push_back(d);
        }
        fpd::write_diagram_svg(per_dim, output);
    } else if (kind == "heatmap") {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open '" + input + "'");
        std::vector<std::vector<double>> grid;
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
            grid.push_back(row);
        }
        fpd::write_heatmap_svg(grid, {}, {}, output);
    } else {
        throw std::runtime_error("plot --kind expects diagram|heatmap");
    }
    write_manifest(output, 0, {input}, {});
    return 0;
}

void write_exemplar_outputs(const fpd::ExemplarResult& res, const std::string& outdir) {
    fs::create_directories(outdir);
    write_membership_csv((fs::path(outdir) / "memberships.csv").string(), res.diagrams, res.state);
    {
        std::ofstream out(fs::path(outdir) / "labels.csv");
        for (int l : res.labels.labels) out << l << '\n';
    }
    for (std::size_t k = 0; k < res.state.centres.size(); ++k) {
        auto base = (fs::path(outdir) / ("centre_" + std::to_string(k + 1))).string();
        fpd::write_diagram(res.state.centres[k], base + ".csv");
        fpd::write_diagram_svg({res.state.centres[k]}, base + ".svg");
    }
    for (std::size_t j = 0; j < res.diagrams.size(); ++j)
        fpd::write_diagram(res.diagrams.diagrams[j],
                           (fs::path(outdir) / (res.diagrams.names[j] + "_ph1.csv")).string());
}

int cmd_experiment(const std::string& name, const std::string& outdir,
                   const fpd::ExemplarConfig& excfg, const fpd::LatticeConfig& latcfg,
                   const fpd::ConvergenceConfig& convcfg) {
    fs::create_directories(outdir);
    auto t0 = Clock::now();
    if (name == "exemplar") {
        auto res = fpd::run_exemplar(excfg);
        write_exemplar_outputs(res, outdir);
        std::cout << "rand_index " << sig12(fpd::fuzzy_rand(res.state.memberships, res.labels))
                  << "\n";
        std::cout << "converged " << (res.state.converged ? "yes" : "no") << "\n";
        write_manifest(outdir, excfg.cluster_seed, {},
                       {{"ph", res.seconds_ph},
                        {"cluster", res.seconds_cluster},
                        {"total", seconds_since(t0)}});
        return 0;
    }
    if (name == "convergence") {
        auto cells = fpd::run_convergence(convcfg);
        std::ofstream out(fs::path(outdir) / "grid.csv");
        out << "n_diagrams,points,seed,iterations_to_converge,converged,mean_wfm_iterations,"
               "seconds\n";
        for (const auto& c : cells)
            out << c.n_diagrams << ',' << c.points << ',' << c.seed << ','
                << c.iterations_to_converge << ',' << (c.converged ? 1 : 0) << ','
                << sig12(c.mean_wfm_iterations) << ',' << sig12(c.seconds) << '\n';
        std::vector<std::vector<double>> grid;
        std::vector<std::string> row_labels, col_labels;
        for (int n : convcfg.diagram_counts) {
            row_labels.push_back("n=" + std::to_string(n));
            std::vector<double> row;
            for (int pts : convcfg.points_per_diagram) {
                std::vector<double> iters;
                for (const auto& c : cells)
                    if (c.n_diagrams == n && c.points == pts)
                        iters.push_back(static_cast<double>(c.iterations_to_converge));
                std::sort(iters.begin(), iters.end());
                row.push_back(iters.empty() ? 0.0 : iters[iters.size() / 2]);
            }
            grid.push_back(row);
        }
        for (int pts : convcfg.points_per_diagram) col_labels.push_back("p=" + std::to_string(pts));
        fpd::write_heatmap_svg(grid, row_labels, col_labels,
                               (fs::path(outdir) / "iterations.svg").string());
        write_manifest(outdir, 0, {}, {{"total", seconds_since(t0)}});
        int failures = 0;
        for (const auto& c : cells)
            if (!c.converged) ++failures;
        std::cout << "runs " << cells.size() << " non_converged " << failures << "\n";
        return failures == 0 ? 0 : 3;
    }
    if (name == "distances") {
        auto rows = fpd::run_distance_comparison(excfg);
        std::ofstream out(fs::path(outdir) / "comparison.csv");
        out << "distance,fuzzy_rand,seconds_per_pair,iterations\n";
        for (const auto& r : rows) {
            out << fpd::distance_kind_name(r.kind) << ',' << sig12(r.rand_index) << ','
                << sig12(r.seconds_per_pair) << ',' << r.iterations << '\n';
            std::cout << fpd::distance_kind_name(r.kind) << " rand " << sig12(r.rand_index)
                      << " s/pair " << sig12(r.seconds_per_pair) << "\n";
        }
        write_manifest(outdir, excfg.cluster_seed, {}, {{"total", seconds_since(t0)}});
        return 0;
    }
    if (name == "lattice") {
        auto results = fpd::run_lattice(latcfg);
        std::ofstream summary(fs::path(outdir) / "summary.csv");
        summary << "transform,grouping_correct,min_winning_membership\n";
        for (const auto& res : results) {
            write_membership_csv(
                (fs::path(outdir) / ("memberships_" + res.transform_name + ".csv")).string(),
                res.diagrams, res.state);
            bool correct = true;
            double min_win = 1.0;
            auto first_group = res.state.memberships.argmax_row(0);
            for (std::size_t j = 0; j < res.diagrams.size(); ++j) {
                auto k = res.state.memberships.argmax_row(j);
                min_win = std::min(min_win, res.state.memberships.at(j, k));
                bool same_as_first = k == first_group;
                if (same_as_first != (res.labels.labels[j] == res.labels.labels[0]))
                    correct = false;
            }
            summary << res.transform_name << ',' << (correct ? 1 : 0) << ',' << sig12(min_win)
                    << '\n';
            std::cout << res.transform_name << " grouping " << (correct ? "ok" : "WRONG")
                      << " min_winning " << sig12(min_win) << "\n";
        }
        write_manifest(outdir, latcfg.cluster_seed, {}, {{"total", seconds_since(t0)}});
        return 0;
    }
    throw std::runtime_error("experiment expects exemplar|convergence|distances|lattice");
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_argv.push_back(argv[i]);
    CLI::App app{"fuzzy c-means clustering in the space of persistence diagrams"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

    auto* gen = app.add_subcommand("gen", "generate a synthetic point cloud");
    std::string gen_kind = "noise", gen_out;
    int gen_n = 100;
    double gen_sigma = 0.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "noise|ring|figure_eight");
    gen->add_option("--n", gen_n, "point count");
    gen->add_option("--sigma", gen_sigma, "gaussian jitter");
    auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "rng seed (FPD_SEED fallback)");
    gen->add_option("-o,--output", gen_out, "output csv")->required();

    auto* genlat = app.add_subcommand("gen-lattice", "generate a cubic lattice supercell");
    std::string lat_kind = "bcc", lat_out;
    int lat_cells = 2;
    double lat_a = 1.0;
    genlat->add_option("--kind", lat_kind, "bcc|fcc");
    genlat->add_option("--cells", lat_cells, "cells per axis");
    genlat->add_option("--a", lat_a, "lattice constant");
    genlat->add_option("-o,--output", lat_out, "output csv")->required();

    auto* tr = app.add_subcommand("transform", "apply rigid transforms to a point cloud");
    std::vector<std::string> tr_rot, tr_refl, tr_transl;
    std::string tr_in, tr_out;
    tr->add_option("--rotate", tr_rot, "axis:degrees, e.g. z:180")->allow_extra_args(false);
    tr->add_option("--reflect", tr_refl, "axis, e.g. x")->allow_extra_args(false);
    tr->add_option("--translate", tr_transl, "dx[,dy[,dz]]")->allow_extra_args(false);
    tr->add_option("input", tr_in, "point cloud (.csv/.xyz)")->required();
    tr->add_option("-o,--output", tr_out, "output csv")->required();

    auto* ph = app.add_subcommand("compute-ph", "Vietoris-Rips persistence diagrams");
    std::vector<std::string> ph_inputs;
    int ph_maxdim = 2;
    double ph_threshold = 0.0, ph_cap = 0.0;
    bool ph_nocap = false;
    std::size_t ph_budget = fpd::kDefaultSimplexBudget;
    std::string ph_out = "diagrams";
    ph->add_option("inputs", ph_inputs, "point clouds or directories")->required();
    ph->add_option("--max-dim", ph_maxdim, "max simplex dimension (1-3)");
    ph->add_option("--threshold", ph_threshold, "Rips threshold (default: cloud diameter)");
    ph->add_option("--cap", ph_cap, "death cap T (default: 2x largest finite death)");
    ph->add_flag("--no-cap", ph_nocap, "keep infinite deaths");
    ph->add_option("--budget", ph_budget, "simplex budget");
    ph->add_option("-o,--output", ph_out, "output directory");

    auto* dist = app.add_subcommand("dist", "distance between two diagrams");
    std::string dist_kind = "w2", dist_a, dist_b;
    int dist_dirs = 50, dist_res = 20;
    double dist_bw = -1.0, dist_t = -1.0, dist_cap = 0.0;
    dist->add_option("--kind", dist_kind, "w2|bottleneck|sw|pi|heat");
    dist->add_option("a", dist_a, "first diagram")->required();
    dist->add_option("b", dist_b, "second diagram")->required();
    dist->add_option("--directions", dist_dirs, "sliced wasserstein directions");
    dist->add_option("--resolution", dist_res, "persistence image resolution");
    dist->add_option("--bandwidth", dist_bw, "persistence image bandwidth");
    dist->add_option("--t", dist_t, "heat kernel time");
    dist->add_option("--cap", dist_cap, "death cap T");

    auto* mean = app.add_subcommand("mean", "weighted Fréchet mean of diagrams");
    std::string mean_weights, mean_out = "mean.csv";
    std::vector<std::string> mean_inputs;
    std::uint64_t mean_seed = 0;
    int mean_max_iter = 100;
    double mean_cap = 0.0;
    bool mean_fail = false;
    mean->add_option("--weights", mean_weights, "comma-separated weights (default: all 1)");
    mean->add_option("inputs", mean_inputs, "diagram files or directories")->required();
    mean->add_option("-o,--output", mean_out, "output diagram csv");
    auto* mean_seed_opt = mean->add_option("--seed", mean_seed, "init sampling seed");
    mean->add_option("--max-iter", mean_max_iter, "iteration cap");
    mean->add_option("--cap", mean_cap, "death cap T");
    mean->add_flag("--fail-on-nonconverged", mean_fail, "exit 3 when not converged");

    auto* cl = app.add_subcommand("cluster", "fuzzy c-means over diagrams");
    std::vector<std::string> cl_inputs;
    int cl_c = 2, cl_iter = 20, cl_dirs = 50, cl_res = 20;
    std::uint64_t cl_seed = 0;
    std::string cl_distance = "w2", cl_exponent = "jmin", cl_out = "state.json";
    double cl_tol = 0.005, cl_cap = 0.0, cl_bw = -1.0, cl_t = -1.0;
    int cl_dim = -1;
    bool cl_fail = false;
    cl->add_option("inputs", cl_inputs, "diagram files or directories")->required();
    cl->add_option("-c,--clusters", cl_c, "cluster count")->required();
    cl->add_option("--max-iter", cl_iter, "iterations");
    auto* cl_seed_opt = cl->add_option("--seed", cl_seed, "init sampling seed");
    cl->add_option("--distance", cl_distance, "w2|bottleneck|sw|pi|heat");
    cl->add_option("--exponent", cl_exponent, "jmin|literal membership update");
    cl->add_option("--tol", cl_tol, "relative cost stability tolerance");
    cl->add_option("--cap", cl_cap, "death cap T");
    cl->add_option("--dim", cl_dim, "homology degree filter for inputs");
    cl->add_option("--directions", cl_dirs, "sliced wasserstein directions");
    cl->add_option("--resolution", cl_res, "persistence image resolution");
    cl->add_option("--bandwidth", cl_bw, "persistence image bandwidth");
    cl->add_option("--t", cl_t, "heat kernel time");
    cl->add_option("-o,--output", cl_out, "state json");
    cl->add_flag("--fail-on-nonconverged", cl_fail, "exit 3 when not converged");

    auto* rank = app.add_subcommand("rank", "top-k candidates via the nearest cluster centre");
    std::string rank_state, rank_query, rank_distance = "w2";
    std::vector<std::string> rank_candidates;
    int rank_k = 3;
    rank->add_option("--state", rank_state, "cluster state json")->required();
    rank->add_option("--query", rank_query, "query diagram")->required();
    rank->add_option("--candidates", rank_candidates, "candidate diagrams or directories")
        ->required();
    rank->add_option("-k", rank_k, "how many to return");
    rank->add_option("--distance", rank_distance, "w2|bottleneck|sw|pi|heat");

    auto* ev = app.add_subcommand("eval", "fuzzy RAND index against reference labels");
    std::string ev_state, ev_labels;
    ev->add_option("--state", ev_state, "cluster state json")->required();
    ev->add_option("--labels", ev_labels, "label csv, one integer per row")->required();

    auto* ex = app.add_subcommand("experiment", "desk-scale reproductions");
    std::string ex_name, ex_out = "experiment_out";
    fpd::ExemplarConfig excfg;
    fpd::LatticeConfig latcfg;
    fpd::ConvergenceConfig convcfg;
    ex->add_option("name", ex_name, "exemplar|convergence|distances|lattice")->required();
    ex->add_option("-o,--output", ex_out, "output directory");
    ex->add_option("--seed", excfg.cluster_seed, "clustering seed");
    ex->add_option("--max-iter", excfg.max_iter, "clustering iterations");
    ex->add_option("--n-noise", excfg.n_noise, "noise cloud size");
    ex->add_option("--n-ring", excfg.n_ring, "ring cloud size");
    ex->add_option("--n-fig8", excfg.n_fig8, "figure-eight cloud size");
    ex->add_option("--sigma", excfg.sigma, "cloud jitter");
    ex->add_option("--rips-threshold", excfg.rips_threshold, "exemplar Rips threshold");
    ex->add_option("--cells", latcfg.cells_per_axis, "lattice cells per axis");
    ex->add_option("--a", latcfg.lattice_constant, "lattice constant");
    ex->add_option("--grid-diagrams", convcfg.diagram_counts, "convergence grid corpus sizes")
        ->delimiter(',');
    ex->add_option("--grid-points", convcfg.points_per_diagram, "convergence grid diagram sizes")
        ->delimiter(',');

    auto* plot = app.add_subcommand("plot", "render a diagram scatter or heatmap as SVG");
    std::string plot_kind = "diagram", plot_in, plot_out = "plot.svg";
    plot->add_option("--kind", plot_kind, "diagram|heatmap");
    plot->add_option("input", plot_in, "input csv")->required();
    plot->add_option("-o,--output", plot_out, "output svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 1;  // usage error
    }

    fpd::set_max_threads(threads);
    latcfg.cluster_seed = excfg.cluster_seed;
    try {
        if (gen->parsed()) {
            g_subcommand = "gen";
            return cmd_gen(gen_kind, gen_n, gen_sigma, gen_seed, gen_seed_opt->count() > 0,
                           gen_out);
        }
        if (genlat->parsed()) {
            g_subcommand = "gen-lattice";
            return cmd_gen_lattice(lat_kind, lat_cells, lat_a, lat_out);
        }
        if (tr->parsed()) {
            g_subcommand = "transform";
            std::vector<std::string> specs;
            for (const auto& r : tr_rot) specs.push_back("rotate:" + r);
            for (const auto& r : tr_refl) specs.push_back("reflect:" + r);
            for (const auto& r : tr_transl) specs.push_back("translate:" + r);
            return cmd_transform(specs, tr_in, tr_out);
        }
        if (ph->parsed()) {
            g_subcommand = "compute-ph";
            return cmd_compute_ph(ph_inputs, ph_maxdim, ph_threshold, ph_cap, ph_nocap, ph_budget,
                                  ph_out);
        }
        if (dist->parsed()) {
            g_subcommand = "dist";
            return cmd_dist(dist_kind, dist_a, dist_b, dist_dirs, dist_res, dist_bw, dist_t,
                            dist_cap);
        }
        if (mean->parsed()) {
            g_subcommand = "mean";
            return cmd_mean(mean_weights, mean_inputs, mean_out, mean_seed,
                            mean_seed_opt->count() > 0, mean_max_iter, mean_cap, mean_fail);
        }
        if (cl->parsed()) {
            g_subcommand = "cluster";
            return cmd_cluster(cl_inputs, cl_c, cl_iter, cl_seed, cl_seed_opt->count() > 0,
                               cl_distance, cl_exponent, cl_tol, cl_cap,
                               cl_dim >= 0 ? std::optional<int>(cl_dim) : std::nullopt, cl_out,
                               cl_fail, cl_dirs, cl_res, cl_bw, cl_t);
        }
        if (rank->parsed()) {
            g_subcommand = "rank";
            return cmd_rank(rank_state, rank_query, rank_candidates, rank_k, rank_distance);
        }
        if (ev->parsed()) {
            g_subcommand = "eval";
            return cmd_eval(ev_state, ev_labels);
        }
        if (ex->parsed()) {
            g_subcommand = "experiment";
            return cmd_experiment(ex_name, ex_out, excfg, latcfg, convcfg);
        }
        if (plot->parsed()) {
            g_subcommand = "plot";
            return cmd_plot(plot_kind, plot_in, plot_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
