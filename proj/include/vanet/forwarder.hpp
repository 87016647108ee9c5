#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "vanet/beaconing.hpp"
#include "vanet/types.hpp"

namespace vanet {

/// One density cluster of rear neighbors.
struct SegmentStats {
    double progress = 0.0;   // distance from sender to the segment's farthest vehicle
    double length = 0.0;     // farthest-to-nearest span within the segment
    int vehicle_count = 0;
    double fitness = 0.0;

    bool operator==(const SegmentStats&) const = default;
};

/// Segments ordered by ascending progress.
using ProgressList = std::vector<SegmentStats>;

/// Fitness = progress * vehicles / length, truncated toward zero.
/// A zero-length segment (single vehicle) scores zero.
inline double segment_fitness(double progress, int vehicle_count, double length) {
    if (!(progress > 0)) throw std::invalid_argument("segment progress must be > 0");
    if (vehicle_count < 1) throw std::invalid_argument("segment needs >= 1 vehicle");
    if (length < 0) throw std::invalid_argument("segment length must be >= 0");
    if (length == 0) return 0.0;
    return std::trunc(progress * vehicle_count / length);
}

/// Farthest rear neighbor: the candidate forwarder and its distance.
/// Absent when no neighbor sits behind the sender.
inline std::optional<std::pair<VehicleId, double>> select_candidate(
    const NeighborTable& nt, const Position& sender_pos, int heading) {
    auto rear = nt.rear_neighbors(sender_pos, heading);
    if (rear.empty()) return std::nullopt;
    const NeighborEntry& far = rear.front();  // sorted desc, ties by lower id
    return std::make_pair(far.id, distance(sender_pos, far.position));
}

/// SucPer = (NeiN / Nmax - 1) * 100, evaluated literally. NeiN is the total
/// rear-neighbor count; the segment passes iff SucPer > Nmax (in percent).
inline double success_percentage(int nei_n, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (nei_n < 0) throw std::invalid_argument("nei_n must be >= 0");
    return (static_cast<double>(nei_n) / n_max - 1.0) * 100.0;
}

inline bool success_passes(int nei_n, int n_max) {
    return success_percentage(nei_n, n_max) > static_cast<double>(n_max);
}

struct Boundaries {
    double min_b = 0.0;
    double max_b = 0.0;

    bool operator==(const Boundaries&) const = default;
};

/// Threshold-driven boundaries: MaxB is the candidate distance, the last
/// segment grows one Dif at a time until the neighbor count passes the
/// success threshold, bottoming out at MinB = 0.
inline Boundaries cbb_boundaries(int rear_count, double candidate_dis, int n_max) {
    if (rear_count < 2) throw std::invalid_argument("cbb_boundaries needs >= 2 rear neighbors");
    if (!(candidate_dis > 0)) throw std::invalid_argument("candidate distance must be > 0");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const double dif = candidate_dis / n_max;
    for (int k = 1; k <= n_max; ++k) {
        if (success_passes(rear_count, n_max)) {
            return Boundaries{candidate_dis - k * dif, candidate_dis};
        }
    }
    return Boundaries{0.0, candidate_dis};
}

inline Boundaries cbb_boundaries(const NeighborTable& nt, const Position& sender_pos, int heading,
                                 int n_max) {
    auto rear = nt.rear_neighbors(sender_pos, heading);
    if (rear.size() < 2) throw std::invalid_argument("cbb_boundaries needs >= 2 rear neighbors");
    return cbb_boundaries(static_cast<int>(rear.size()),
                          distance(sender_pos, rear.front().position), n_max);
}

/// Clusters rear neighbors by the gap-doubling rule: walk them farthest
/// first; a vehicle joins the current segment iff its gap to the previous
/// vehicle is less than twice the previous in-segment gap (the first
/// comparison of a segment always joins). A doubled gap opens a new segment.
inline ProgressList cluster_segments(const std::vector<NeighborEntry>& rear_desc,
                                     const Position& sender_pos) {
    ProgressList segments;
    if (rear_desc.empty()) return segments;

    double seg_progress = distance(sender_pos, rear_desc.front().position);
    double seg_nearest = seg_progress;
    int seg_count = 1;
    bool have_prev_gap = false;
    double prev_gap = 0.0;

    auto close_segment = [&] {
        SegmentStats s;
        s.progress = seg_progress;
        s.length = seg_progress - seg_nearest;
        s.vehicle_count = seg_count;
        s.fitness = segment_fitness(s.progress, s.vehicle_count, s.length);
        segments.push_back(s);
    };

    for (std::size_t i = 1; i < rear_desc.size(); ++i) {
        const double d = distance(sender_pos, rear_desc[i].position);
        const double gap = seg_nearest - d;
        if (!have_prev_gap || gap < 2.0 * prev_gap) {
            seg_nearest = d;
            ++seg_count;
            prev_gap = gap;
            have_prev_gap = true;
        } else {
            close_segment();
            seg_progress = d;
            seg_nearest = d;
            seg_count = 1;
            have_prev_gap = false;
            prev_gap = 0.0;
        }
    }
    close_segment();

    std::reverse(segments.begin(), segments.end());  // ascending progress
    return segments;
}

inline ProgressList cluster_segments(const NeighborTable& nt, const Position& sender_pos,
                                     int heading) {
    return cluster_segments(nt.rear_neighbors(sender_pos, heading), sender_pos);
}

/// Single-step PSO parameters; c1 = c2 = 2 with w and the two rand factors
/// drawn per invocation.
struct PsoParams {
    double w_min = 0.1;
    double w_max = 0.5;
    double c1 = 2.0;
    double c2 = 2.0;
    double rand_min = 0.1;
    double rand_max = 1.0;
};

/// Per-vehicle PSO state. l_best is the latest fitness-derived boundary,
/// p_best the previous one, g_best the best value reported over CRNT.
struct PsoState {
    double l_best = 0.0;
    std::optional<double> p_best;
    std::optional<double> g_best;
};

struct PsoDraw {
    double w = 0.1;
    double r1 = 0.1;
    double r2 = 0.1;
};

struct PsoResult {
    double fit = 0.0;
    double new_l_best = 0.0;
};

/// One PSO step. The velocity term pulls l_best toward p_best and g_best
/// under inertia w; the updated boundary is l_best plus that velocity, and
/// fit is reported relative to p_best so that new_l_best = p_best + fit.
/// Missing p_best / g_best default to l_best.
inline PsoResult pso_update(const PsoState& state, const PsoParams& params, const PsoDraw& draw) {
    if (!(draw.w >= params.w_min && draw.w <= params.w_max)) {
        throw std::invalid_argument("pso inertia w outside configured range");
    }
    if (!(draw.r1 >= params.rand_min && draw.r1 <= params.rand_max) ||
        !(draw.r2 >= params.rand_min && draw.r2 <= params.rand_max)) {
        throw std::invalid_argument("pso rand factor outside configured range");
    }
    const double l = state.l_best;
    const double p = state.p_best.value_or(l);
    const double g = state.g_best.value_or(l);
    const double velocity = l * draw.w + params.c1 * draw.r1 * (p - l) + params.c2 * draw.r2 * (g - l);
    const double new_l = l + velocity;
    return PsoResult{new_l - p, new_l};
}

inline PsoDraw draw_pso(const PsoParams& params, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w_dist(params.w_min, params.w_max);
    std::uniform_real_distribution<double> r_dist(params.rand_min, params.rand_max);
    PsoDraw d;
    d.w = w_dist(rng);
    d.r1 = r_dist(rng);
    d.r2 = r_dist(rng);
    return d;
}

/// PSO-driven boundaries. l_best seeds from the max-fitness segment's
/// progress (ties prefer the farther segment), one PSO step produces MinB
/// (clamped below the candidate distance), and the fresh l_best persists as
/// the vehicle's next p_best.
inline Boundaries pcbb_boundaries(const ProgressList& pl, PsoState& state,
                                  const PsoParams& params, double candidate_dis,
                                  const PsoDraw& draw) {
    if (pl.empty()) throw std::invalid_argument("pcbb_boundaries requires a non-empty progress list");
    if (!(candidate_dis > 0)) throw std::invalid_argument("candidate distance must be > 0");

    const SegmentStats* best = &pl.front();
    for (const SegmentStats& s : pl) {
        if (s.fitness > best->fitness || (s.fitness == best->fitness && s.progress > best->progress)) {
            best = &s;
        }
    }
    state.l_best = best->progress;

    const PsoResult r = pso_update(state, params, draw);
    const double hi = std::max(0.0, candidate_dis - 1.0);
    const double min_b = std::clamp(r.new_l_best, 0.0, hi);

    state.p_best = state.l_best;  // fresh fitness-derived value carries over
    return Boundaries{min_b, candidate_dis};
}

inline Boundaries pcbb_boundaries(const ProgressList& pl, PsoState& state,
                                  const PsoParams& params, double candidate_dis,
                                  std::mt19937_64& rng) {
    return pcbb_boundaries(pl, state, params, candidate_dis, draw_pso(params, rng));
}

}  // namespace vanet
