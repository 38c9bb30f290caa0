#include "fpd/frechet_mean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fpd/distances.hpp"
#include "fpd/matching.hpp"

namespace fpd {

std::size_t WeightedMeanProblem::padded_cardinality() const {
    std::size_t m = 0;
    for (std::size_t j = 0; j < diagrams.size(); ++j)
        if (weights[j] > 0.0) m = std::max(m, diagrams[j].size());
    return m;
}

std::pair<PartnerMap, std::vector<int>> match_slots_raw(
    const std::vector<DiagramPoint>& slot_points, const std::vector<char>& slot_real,
    const PersistenceDiagram& target) {
    const std::size_t s = slot_points.size();
    PartnerMap partners(s, -1);

    std::vector<DiagramPoint> reals;
    std::vector<std::size_t> real_slot;  // row in the matching -> slot index
    for (std::size_t i = 0; i < s; ++i)
        if (slot_real[i]) {
            reals.push_back(slot_points[i]);
            real_slot.push_back(i);
        }
    const std::size_t r = reals.size();
    const auto& tgt = target.points();
    const std::size_t nt = tgt.size();

    Matching m = hungarian(detail::augment_points(reals, tgt));

    std::vector<int> to_diagonal;  // target points the transport sends to the diagonal
    for (std::size_t i = 0; i < r; ++i) {
        int col = m.row_to_col[i];
        partners[real_slot[i]] = col < static_cast<int>(nt) ? col : -1;
    }
    for (std::size_t row = r; row < r + nt; ++row) {
        int col = m.row_to_col[row];
        if (col < static_cast<int>(nt)) to_diagonal.push_back(col);
    }
    // most persistent candidates first
    std::sort(to_diagonal.begin(), to_diagonal.end(), [&](int a, int b) {
        double pa = tgt[a].persistence(), pb = tgt[b].persistence();
        if (pa != pb) return pa > pb;
        return a < b;
    });
    return {std::move(partners), std::move(to_diagonal)};
}

PartnerMap match_slots(const std::vector<DiagramPoint>& slot_points,
                       const std::vector<char>& slot_real,
                       const PersistenceDiagram& target) {
    auto [partners, to_diagonal] = match_slots_raw(slot_points, slot_real, target);
    std::size_t next = 0;
    for (std::size_t i = 0; i < slot_points.size() && next < to_diagonal.size(); ++i) {
        if (slot_real[i]) continue;
        partners[i] = to_diagonal[next++];
    }
    return partners;
}

namespace {

struct Slots {
    std::vector<DiagramPoint> points;
    std::vector<char> real;
};

void validate(const WeightedMeanProblem& p, const PersistenceDiagram& init, int max_iter) {
    if (p.diagrams.size() != p.weights.size())
        throw std::invalid_argument("weights/diagrams size mismatch");
    if (p.diagrams.empty()) throw std::invalid_argument("no diagrams");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    bool any = false;
    for (double w : p.weights) {
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and >= 0");
        any = any || w > 0.0;
    }
    if (!any) throw std::invalid_argument("all weights are zero");
    for (const auto& d : p.diagrams)
        if (!d.all_finite())
            throw std::invalid_argument("weighted mean requires capped diagrams");
    if (!init.all_finite()) throw std::invalid_argument("init diagram must be capped");
}

// The exact minimizer of the matching-fixed objective for each slot. The
// feasible set per slot is R^2 together with the diagonal (dropping the
// point): the weighted centroid of Eq-4 form is compared against leaving the
// matched partners on the diagonal, which can be strictly cheaper when a
// padded slot collects far-apart partners. Without that comparison the
// objective can increase and the alternation can cycle.
void apply_update(Slots& slots, const std::vector<const PersistenceDiagram*>& diagrams,
                  const std::vector<double>& weights,
                  const std::vector<PartnerMap>& partners, double total_weight) {
    const std::size_t s = slots.points.size();
    for (std::size_t i = 0; i < s; ++i) {
        double wb = 0.0, wd = 0.0, w_od = 0.0, diag_cost = 0.0;
        for (std::size_t j = 0; j < diagrams.size(); ++j) {
            int t = partners[j][i];
            if (t < 0) continue;
            const auto& x = diagrams[j]->points()[t];
            wb += weights[j] * x.birth;
            wd += weights[j] * x.death;
            w_od += weights[j];
            double dd = distance_to_diagonal(x);
            diag_cost += weights[j] * dd * dd;
        }
        if (w_od <= 0.0) {  // every partner is the diagonal
            slots.real[i] = 0;
            continue;
        }
        double ob = wb / w_od, od = wd / w_od;          // off-diagonal weighted mean w
        double proj = 0.5 * (ob + od);                  // w_delta, nearest diagonal point
        double w_diag = total_weight - w_od;
        double b = (wb + w_diag * proj) / total_weight;
        double d = (wd + w_diag * proj) / total_weight;
        double point_cost = 0.0;
        for (std::size_t j = 0; j < diagrams.size(); ++j) {
            int t = partners[j][i];
            if (t < 0) {
                double dd = (d - b) / std::numbers::sqrt2;
                point_cost += weights[j] * dd * dd;
            } else {
                const auto& x = diagrams[j]->points()[t];
                double db = b - x.birth, ddth = d - x.death;
                point_cost += weights[j] * (db * db + ddth * ddth);
            }
        }
        if (d - b > 0.0 && point_cost < diag_cost) {
            slots.points[i] = {b, d};
            slots.real[i] = 1;
        } else {
            slots.real[i] = 0;  // the diagonal is at least as cheap
        }
    }
}

}  // namespace

MeanState weighted_frechet_mean(const WeightedMeanProblem& p, const PersistenceDiagram& init,
                                int max_iter) {
    validate(p, init, max_iter);

    std::vector<const PersistenceDiagram*> diagrams;
    std::vector<double> weights;
    std::vector<std::size_t> included;
    for (std::size_t j = 0; j < p.diagrams.size(); ++j)
        if (p.weights[j] > 0.0) {
            diagrams.push_back(&p.diagrams[j]);
            weights.push_back(p.weights[j]);
            included.push_back(j);
        }
    double total_weight = std::accumulate(weights.begin(), weights.end(), 0.0);

    const std::size_t s = std::max(p.padded_cardinality(), init.size());
    Slots slots;
    slots.points.assign(s, DiagramPoint{});
    slots.real.assign(s, 0);
    for (std::size_t i = 0; i < init.size(); ++i) {
        slots.points[i] = init.points()[i];
        slots.real[i] = 1;
    }

    const std::size_t nj = diagrams.size();
    std::vector<PartnerMap> partners(nj), prev;
    std::vector<std::vector<int>> leftovers(nj);
    MeanState state;
    for (int iter = 0; iter < max_iter; ++iter) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(nj); ++j) {
            auto [map, rest] = match_slots_raw(slots.points, slots.real, *diagrams[j]);
            partners[j] = std::move(map);
            leftovers[j] = std::move(rest);
        }
        // hand diagonal-bound target points to free slots, rotating across
        // diagrams so independent points land on distinct slots when possible
        std::vector<std::size_t> free_slots;
        for (std::size_t i = 0; i < s; ++i)
            if (!slots.real[i]) free_slots.push_back(i);
        std::size_t cursor = 0;
        for (std::size_t j = 0; j < nj && !free_slots.empty(); ++j)
            for (int t : leftovers[j]) {
                std::size_t slot = free_slots[cursor % free_slots.size()];
                if (partners[j][slot] >= 0) break;  // this diagram already filled every free slot
                partners[j][slot] = t;
                ++cursor;
            }
        if (!prev.empty() && partners == prev) {
            state.converged = true;
            break;
        }
        apply_update(slots, diagrams, weights, partners, total_weight);
        prev = partners;
        state.iterations = iter + 1;
    }

    std::vector<DiagramPoint> pts;
    for (std::size_t i = 0; i < s; ++i)
        if (slots.real[i]) pts.push_back(slots.points[i]);
    state.mean = PersistenceDiagram(p.diagrams.front().dim(), std::move(pts));
    state.matchings.assign(p.diagrams.size(), {});
    for (std::size_t j = 0; j < nj; ++j) state.matchings[included[j]] = partners[j];
    state.frechet_value = frechet_value(state.mean, p);
    return state;
}

double frechet_value(const PersistenceDiagram& mean, const WeightedMeanProblem& p) {
    double f = 0.0;
    for (std::size_t j = 0; j < p.diagrams.size(); ++j) {
        if (p.weights[j] == 0.0) continue;
        double w2 = wasserstein2(mean, p.diagrams[j]);
        f += p.weights[j] * w2 * w2;
    }
    return f;
}

PersistenceDiagram sample_init(const WeightedMeanProblem& p, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : p.weights) total += w;
    if (total <= 0.0) throw std::invalid_argument("all weights are zero");
    double u = (rng() >> 11) * 0x1.0p-53 * total;
    double acc = 0.0;
    for (std::size_t j = 0; j < p.diagrams.size(); ++j) {
        acc += p.weights[j];
        if (u < acc) return p.diagrams[j];
    }
    return p.diagrams.back();
}

}  // namespace fpd
