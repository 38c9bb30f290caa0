#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpd/diagram.hpp"
#include "fpd/distances.hpp"
#include "fpd/frechet_mean.hpp"

namespace fpd {

// Row-stochastic n x c matrix of membership values.
struct MembershipMatrix {
    std::size_t n = 0, c = 0;
    std::vector<double> values;  // n*c, row-major

    double& at(std::size_t j, std::size_t k) { return values[j * c + k]; }
    double at(std::size_t j, std::size_t k) const { return values[j * c + k]; }
    std::size_t argmax_row(std::size_t j) const;
};

// Eq. (1) as printed uses an unsquared distance ratio; the row-wise minimizer
// of the cost J squares it. Both are available, the J-minimizing form is the
// default since it preserves the descent guarantee.
enum class MembershipExponent { paper_literal, j_minimizing };

struct FcmConfig {
    int c = 2;
    int max_iter = 20;
    std::uint64_t seed = 0;
    DistanceSpec distance;
    MembershipExponent exponent = MembershipExponent::j_minimizing;
    double convergence_tol = 0.005;  // relative cost stability
    bool stop_on_convergence = false;
    int mean_max_iter = 100;
};

struct ClusterState {
    std::vector<PersistenceDiagram> centres;
    MembershipMatrix memberships;
    std::vector<double> cost_trace;  // J after each membership update
    int iterations = 0;
    bool converged = false;  // final two costs within tolerance
    int converged_at = 0;    // first stable iteration, 0 if never
    // bookkeeping for the convergence study and per-phase timing
    long wfm_iterations_total = 0;
    int wfm_calls = 0;
    double seconds_distances = 0.0;
    double seconds_means = 0.0;
};

// Memberships from a precomputed n x c distance matrix.
MembershipMatrix memberships_from_distances(const std::vector<double>& dist, std::size_t n,
                                            std::size_t c, MembershipExponent exponent);

MembershipMatrix update_memberships(const DiagramSet& ds,
                                    const std::vector<PersistenceDiagram>& centres,
                                    const FcmConfig& cfg);

// One weighted Fréchet mean per cluster with weights r_jk^2, warm-started
// from `previous` when given (sampled inits otherwise).
std::vector<PersistenceDiagram> update_centres(const DiagramSet& ds,
                                               const MembershipMatrix& memberships,
                                               const FcmConfig& cfg,
                                               const std::vector<PersistenceDiagram>& previous = {});

ClusterState cluster(const DiagramSet& ds, const FcmConfig& cfg);

// Nearest cluster centre to the query, then the k candidates nearest that
// centre, ascending by distance.
std::vector<std::pair<std::string, double>> rank_by_centre(const ClusterState& state,
                                                           const PersistenceDiagram& query,
                                                           const DiagramSet& candidates,
                                                           std::size_t k,
                                                           const DistanceSpec& distance);

double clustering_cost(const std::vector<double>& dist, const MembershipMatrix& m);

// Cluster-state serialization (full precision JSON).
void write_cluster_state(const ClusterState& state, const DiagramSet& ds,
                         const FcmConfig& cfg, const std::string& path);
struct LoadedClusterState {
    ClusterState state;
    std::vector<std::string> names;
    int dim = 0;
};
LoadedClusterState read_cluster_state(const std::string& path);

}  // namespace fpd
