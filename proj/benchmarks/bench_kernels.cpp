// Wall-clock comparison of the serial reference kernels against their
// OpenMP counterparts. Build target only, not part of the test suite.
#include <chrono>
#include <cstdio>
#include <vector>

#include "fpd/datagen.hpp"
#include "fpd/distances.hpp"
#include "fpd/experiments.hpp"
#include "fpd/frechet_mean.hpp"
#include "fpd/kernels.hpp"

using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_seconds(F&& fn, int repeats = 3) {
    double best = 1e30;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        fn();
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.4fs  parallel %8.4fs  speedup %.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", fpd::max_threads());

    {
        auto pc = fpd::generate({fpd::ShapeKind::noise, 1500, 0.0, 1});
        double s = time_seconds([&] { fpd::pairwise_distances_serial(pc); });
        double p = time_seconds([&] { fpd::pairwise_distances(pc); });
        report("pairwise_distances", s, p);
    }

    {
        std::vector<fpd::PersistenceDiagram> rows, cols;
        for (int i = 0; i < 40; ++i) rows.push_back(fpd::random_diagram(1, 40, 100 + i));
        for (int i = 0; i < 3; ++i) cols.push_back(fpd::random_diagram(1, 40, 900 + i));
        auto metric = fpd::resolve_metric(fpd::DistanceSpec{}, rows);
        double s = time_seconds([&] { fpd::distance_matrix_serial(rows, cols, metric); }, 2);
        double p = time_seconds([&] { fpd::distance_matrix(rows, cols, metric); }, 2);
        report("w2 distance_matrix", s, p);
    }

    {
        // per-diagram matchings inside one weighted-mean iteration
        fpd::WeightedMeanProblem prob;
        for (int j = 0; j < 60; ++j) {
            prob.diagrams.push_back(fpd::random_diagram(1, 35, 7 * j + 1));
            prob.weights.push_back(1.0);
        }
        auto init = prob.diagrams.front();
        fpd::set_max_threads(1);
        double s = time_seconds([&] { fpd::weighted_frechet_mean(prob, init, 3); }, 2);
        fpd::set_max_threads(0);
        double p = time_seconds([&] { fpd::weighted_frechet_mean(prob, init, 3); }, 2);
        report("weighted_frechet_mean x3", s, p);
    }

    return 0;
}
