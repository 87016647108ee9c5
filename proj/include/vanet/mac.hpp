#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "vanet/types.hpp"

namespace vanet {

/// 802.11p-style timing constants. Defaults are the standard highway
/// control-channel values. SIFS and cw_max are carried for completeness;
/// pure broadcast never acknowledges, so neither drives behavior.
struct MacParams {
    SimTime slot_us = 16;
    SimTime sifs_us = 32;
    SimTime difs_us = 64;
    int cw_min = 15;
    int cw_max = 1023;
    std::int64_t data_rate_bps = 6'000'000;
    SimTime plcp_us = 8;
    SimTime symbol_us = 8;
    // The contention-window constant is given in "us" by convention but acts
    // as a slot count; both readings are supported, slots being the default.
    bool cw_in_slots = true;

    SimTime backoff_quantum_us() const { return cw_in_slots ? slot_us : 1; }
};

/// Airtime of a frame: PLCP header plus a whole number of OFDM symbols.
inline SimTime tx_duration(const MacParams& params, std::size_t payload_bytes) {
    if (payload_bytes == 0) throw std::invalid_argument("tx_duration requires payload_bytes > 0");
    const double bits_per_symbol =
        static_cast<double>(params.data_rate_bps) * static_cast<double>(params.symbol_us) * 1e-6;
    const auto symbols = static_cast<SimTime>(
        std::ceil(static_cast<double>(payload_bytes) * 8.0 / bits_per_symbol));
    return params.plcp_us + symbols * params.symbol_us;
}

/// Uniform integer backoff in [0, cw].
inline int draw_backoff(int cw, std::mt19937_64& rng) {
    if (cw < 0) throw std::invalid_argument("contention window must be >= 0");
    if (cw == 0) return 0;
    std::uniform_int_distribution<int> dist(0, cw);
    return dist(rng);
}

/// A half-open [start, end) interval during which the medium is busy at some
/// vehicle. Lists passed to csma_grant_time must be sorted by start and
/// non-overlapping (merged).
struct BusyInterval {
    SimTime start = 0;
    SimTime end = 0;
};

/// Computes when a frame queued at t_ready may start: the channel must be
/// idle for DIFS, then `backoff_slots` whole slots are counted down during
/// idle time only. The countdown freezes while busy and each busy period
/// costs a fresh DIFS.
inline SimTime csma_grant_time(const MacParams& params, SimTime t_ready, int backoff_slots,
                               std::span<const BusyInterval> busy) {
    const SimTime quantum = params.backoff_quantum_us();
    SimTime anchor = t_ready;
    SimTime remaining = backoff_slots;
    for (const BusyInterval& b : busy) {
        if (b.end <= anchor) continue;
        const SimTime want = anchor + params.difs_us + remaining * quantum;
        if (b.start >= want) break;
        if (b.start > anchor + params.difs_us) {
            const SimTime usable = (b.start - anchor - params.difs_us) / quantum;
            remaining -= usable < remaining ? usable : remaining;
        }
        anchor = b.end;
    }
    return anchor + params.difs_us + remaining * quantum;
}

}  // namespace vanet
