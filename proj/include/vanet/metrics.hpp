#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "vanet/config.hpp"
#include "vanet/engine.hpp"
#include "vanet/types.hpp"

namespace vanet {

struct ReceptionBin {
    double distance_lo = 0.0;
    double distance_hi = 0.0;
    std::int64_t attempts = 0;
    std::int64_t received = 0;
    double probability = 0.0;
};

/// Reception probability vs distance from the original sender; attempts are
/// unique (vehicle, message) exposure pairs, reception credited through any
/// hop.
struct ReceptionCurve {
    std::vector<ReceptionBin> bins;
};

struct DelayPoint {
    double key = 0.0;  // window start in seconds, or distance bin start in meters
    double mean_delay_us = 0.0;
    std::int64_t samples = 0;
};

struct DelaySeries {
    std::vector<DelayPoint> samples;
};

struct CollisionBucket {
    std::int64_t t_s = 0;
    std::int64_t collided = 0;
    std::int64_t attempts = 0;
    double ratio = 0.0;
};

struct CollisionReport {
    std::vector<CollisionBucket> per_second;
};

namespace metrics_detail {

struct DangerInfo {
    SimTime t = 0;
    double origin_x = 0.0;
};

inline std::map<MsgKey, DangerInfo> dangers(const EventTrace& trace) {
    std::map<MsgKey, DangerInfo> out;
    for (const TraceRecord& r : trace.records) {
        if (r.kind != TraceKind::DangerDetect) continue;
        out.emplace(MsgKey{r.msg_sender, r.msg_id}, DangerInfo{r.time_us, r.x_m});
    }
    return out;
}

/// Distance of every exposed (message, vehicle) pair from the original
/// sender, taken at the origination transmission.
inline std::map<std::pair<MsgKey, VehicleId>, double> exposures(
    const EventTrace& trace, const std::map<MsgKey, DangerInfo>& origin) {
    std::map<std::pair<MsgKey, VehicleId>, double> out;
    for (const TraceRecord& r : trace.records) {
        if (r.kind != TraceKind::Delivery || r.frame != FrameKind::Emergency || r.hop != 0) continue;
        auto it = origin.find(MsgKey{r.msg_sender, r.msg_id});
        if (it == origin.end()) continue;
        out.emplace(std::make_pair(MsgKey{r.msg_sender, r.msg_id}, r.vehicle),
                    std::fabs(r.x_m - it->second.origin_x));
    }
    return out;
}

inline std::map<std::pair<MsgKey, VehicleId>, SimTime> first_receptions(const EventTrace& trace) {
    std::map<std::pair<MsgKey, VehicleId>, SimTime> out;
    for (const TraceRecord& r : trace.records) {
        if (r.kind != TraceKind::Delivery || r.frame != FrameKind::Emergency ||
            r.outcome != TraceOutcome::Received) {
            continue;
        }
        out.emplace(std::make_pair(MsgKey{r.msg_sender, r.msg_id}, r.vehicle), r.time_us);
    }
    return out;
}

}  // namespace metrics_detail

inline ReceptionCurve reception_curve(const EventTrace& trace, double bin_width) {
    if (!(bin_width > 0)) throw std::invalid_argument("bin_width must be > 0");
    const auto origin = metrics_detail::dangers(trace);
    const auto exposure = metrics_detail::exposures(trace, origin);
    const auto received = metrics_detail::first_receptions(trace);

    ReceptionCurve curve;
    if (exposure.empty()) return curve;

    double max_d = 0.0;
    for (const auto& [key, d] : exposure) max_d = std::max(max_d, d);
    const auto nbins = static_cast<std::size_t>(std::floor(max_d / bin_width)) + 1;
    curve.bins.resize(nbins);
    for (std::size_t i = 0; i < nbins; ++i) {
        curve.bins[i].distance_lo = static_cast<double>(i) * bin_width;
        curve.bins[i].distance_hi = static_cast<double>(i + 1) * bin_width;
    }
    for (const auto& [key, d] : exposure) {
        auto idx = static_cast<std::size_t>(d / bin_width);
        if (idx >= nbins) idx = nbins - 1;
        curve.bins[idx].attempts += 1;
        if (received.count(key)) curve.bins[idx].received += 1;
    }
    for (auto& b : curve.bins) {
        b.probability = b.attempts > 0
                            ? static_cast<double>(b.received) / static_cast<double>(b.attempts)
                            : 0.0;
    }
    return curve;
}

/// Mean first-reception delay per time window (window start in seconds).
inline DelaySeries delay_series(const EventTrace& trace, SimTime window_us) {
    if (window_us <= 0) throw std::invalid_argument("sample window must be > 0");
    const auto origin = metrics_detail::dangers(trace);
    const auto received = metrics_detail::first_receptions(trace);

    std::map<std::int64_t, std::pair<double, std::int64_t>> acc;  // window -> (sum, n)
    for (const auto& [key, t_rx] : received) {
        auto it = origin.find(key.first);
        if (it == origin.end()) continue;
        const auto delay = static_cast<double>(t_rx - it->second.t);
        auto& slot = acc[t_rx / window_us];
        slot.first += delay;
        slot.second += 1;
    }
    DelaySeries out;
    for (const auto& [win, sum_n] : acc) {
        DelayPoint p;
        p.key = static_cast<double>(win) * static_cast<double>(window_us) / kMicrosPerSecond;
        p.mean_delay_us = sum_n.first / static_cast<double>(sum_n.second);
        p.samples = sum_n.second;
        out.samples.push_back(p);
    }
    return out;
}

/// Mean first-reception delay per distance bin from the original sender.
inline DelaySeries delay_by_distance(const EventTrace& trace, double bin_width) {
    if (!(bin_width > 0)) throw std::invalid_argument("bin_width must be > 0");
    const auto origin = metrics_detail::dangers(trace);
    const auto exposure = metrics_detail::exposures(trace, origin);
    const auto received = metrics_detail::first_receptions(trace);

    std::map<std::int64_t, std::pair<double, std::int64_t>> acc;  // bin -> (sum, n)
    for (const auto& [key, t_rx] : received) {
        auto o = origin.find(key.first);
        if (o == origin.end()) continue;
        auto e = exposure.find(key);
        if (e == exposure.end()) continue;
        const auto bin = static_cast<std::int64_t>(e->second / bin_width);
        auto& slot = acc[bin];
        slot.first += static_cast<double>(t_rx - o->second.t);
        slot.second += 1;
    }
    DelaySeries out;
    for (const auto& [bin, sum_n] : acc) {
        DelayPoint p;
        p.key = static_cast<double>(bin) * bin_width;
        p.mean_delay_us = sum_n.first / static_cast<double>(sum_n.second);
        p.samples = sum_n.second;
        out.samples.push_back(p);
    }
    return out;
}

/// Per-second collided counts and collision ratio over every delivery
/// attempt, beacons included.
inline CollisionReport collision_report(const EventTrace& trace) {
    std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> acc;  // sec -> (collided, all)
    for (const TraceRecord& r : trace.records) {
        if (r.kind != TraceKind::Delivery) continue;
        auto& slot = acc[r.time_us / kMicrosPerSecond];
        slot.second += 1;
        if (r.outcome == TraceOutcome::Collided) slot.first += 1;
    }
    CollisionReport out;
    const std::int64_t last = acc.empty() ? -1 : acc.rbegin()->first;
    for (std::int64_t s = 0; s <= last; ++s) {
        CollisionBucket b;
        b.t_s = s;
        if (auto it = acc.find(s); it != acc.end()) {
            b.collided = it->second.first;
            b.attempts = it->second.second;
            b.ratio = b.attempts > 0
                          ? static_cast<double>(b.collided) / static_cast<double>(b.attempts)
                          : 0.0;
        }
        out.per_second.push_back(b);
    }
    return out;
}

// --- headline per-run numbers -------------------------------------------------

/// The three comparison quantities: pooled reception probability in the
/// (1000, 1500] m bins, mean delay in the final sampling window, and the
/// final-second collision ratio.
struct RunSummary {
    double reception_beyond_1000 = 0.0;
    bool reception_defined = false;
    double mean_delay_final_us = 0.0;
    bool delay_defined = false;
    double collision_ratio_final = 0.0;
};

inline RunSummary summarize_run(const EventTrace& trace, const ScenarioConfig& cfg) {
    RunSummary s;

    const ReceptionCurve curve = reception_curve(trace, cfg.metrics_bin_width_m);
    std::int64_t attempts = 0;
    std::int64_t received = 0;
    for (const ReceptionBin& b : curve.bins) {
        if (b.distance_lo >= 1000.0 && b.distance_hi <= 1500.0) {
            attempts += b.attempts;
            received += b.received;
        }
    }
    if (attempts > 0) {
        s.reception_beyond_1000 = static_cast<double>(received) / static_cast<double>(attempts);
        s.reception_defined = true;
    }

    const auto window_us = static_cast<SimTime>(cfg.metrics_sample_every_ms * 1000.0);
    const std::int64_t final_window = trace.horizon_us / window_us - 1;
    const DelaySeries delays = delay_series(trace, window_us);
    for (const DelayPoint& p : delays.samples) {
        const auto win = static_cast<std::int64_t>(
            std::llround(p.key * kMicrosPerSecond / static_cast<double>(window_us)));
        if (win == final_window) {
            s.mean_delay_final_us = p.mean_delay_us;
            s.delay_defined = true;
        }
    }

    const CollisionReport collisions = collision_report(trace);
    const std::int64_t final_second = trace.horizon_us / kMicrosPerSecond - 1;
    for (const CollisionBucket& b : collisions.per_second) {
        if (b.t_s == final_second) s.collision_ratio_final = b.ratio;
    }
    return s;
}

// --- file output ---------------------------------------------------------------

inline void write_reception_csv(std::ostream& os, const ReceptionCurve& c, bool dat = false) {
    char buf[160];
    os << (dat ? "# bin_lo bin_hi attempts received probability\n"
               : "bin_lo,bin_hi,attempts,received,probability\n");
    const char* fmt = dat ? "%.1f %.1f %lld %lld %.6f\n" : "%.1f,%.1f,%lld,%lld,%.6f\n";
    for (const ReceptionBin& b : c.bins) {
        std::snprintf(buf, sizeof(buf), fmt, b.distance_lo, b.distance_hi,
                      static_cast<long long>(b.attempts), static_cast<long long>(b.received),
                      b.probability);
        os << buf;
    }
}

inline void write_delay_csv(std::ostream& os, const DelaySeries& d, const char* key_name,
                            bool dat = false) {
    char buf[160];
    if (dat) {
        os << "# " << key_name << " mean_delay_us samples\n";
    } else {
        os << key_name << ",mean_delay_us,samples\n";
    }
    const char* fmt = dat ? "%.3f %.3f %lld\n" : "%.3f,%.3f,%lld\n";
    for (const DelayPoint& p : d.samples) {
        std::snprintf(buf, sizeof(buf), fmt, p.key, p.mean_delay_us,
                      static_cast<long long>(p.samples));
        os << buf;
    }
}

inline void write_collisions_csv(std::ostream& os, const CollisionReport& c, bool dat = false) {
    char buf[160];
    os << (dat ? "# t_s collided attempts ratio\n" : "t_s,collided,attempts,ratio\n");
    const char* fmt = dat ? "%lld %lld %lld %.6f\n" : "%lld,%lld,%lld,%.6f\n";
    for (const CollisionBucket& b : c.per_second) {
        std::snprintf(buf, sizeof(buf), fmt, static_cast<long long>(b.t_s),
                      static_cast<long long>(b.collided), static_cast<long long>(b.attempts),
                      b.ratio);
        os << buf;
    }
}

}  // namespace vanet
