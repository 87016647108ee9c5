#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vanet/types.hpp"

namespace vanet {

/// Nakagami-m fading channel over log-distance path loss.
///
/// tx_power_dbm and path_loss_exponent ship calibrated so that reception is
/// ~99% at short range and ~20% at half the nominal 1000 m range.
struct ChannelParams {
    int m = 3;                            // Nakagami shape, integer >= 1
    double path_loss_exponent = 2.8;
    double tx_power_dbm = -15.0;
    double noise_floor_dbm = -99.0;
    double snr_threshold_db = 10.0;       // adjustable 10..40 dB
    double range_m = 1000.0;              // nominal radio range
    double capture_threshold_db = 10.0;   // interferer within this of signal -> collision
    double carrier_sense_offset_db = 10.0;  // busy above noise + offset
    double rx_floor_offset_db = 10.0;       // receivers evaluated above noise - offset

    double threshold_dbm() const { return noise_floor_dbm + snr_threshold_db; }
    double carrier_sense_dbm() const { return noise_floor_dbm + carrier_sense_offset_db; }
    double rx_floor_dbm() const { return noise_floor_dbm - rx_floor_offset_db; }
};

/// Deterministic mean received power at distance d (log-distance law,
/// 1 m reference). Strictly decreasing in d.
inline double mean_rx_power_dbm(const ChannelParams& params, double d) {
    if (!(d > 0)) throw std::domain_error("mean_rx_power requires d > 0");
    return params.tx_power_dbm - 10.0 * params.path_loss_exponent * std::log10(d);
}

// Distances inside the 1 m reference are clamped; the log-distance model has
// no meaning there and co-located vehicles would otherwise blow up the math.
inline double effective_distance(double d) { return d < 1.0 ? 1.0 : d; }

/// P[Gamma(m, mean/m) > threshold] = e^-x * sum_{k<m} x^k / k!
/// with x = m * threshold / mean, the closed form for integer m.
inline double nakagami_success_probability(double x, int m) {
    if (m < 1) throw std::domain_error("Nakagami shape m must be >= 1");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= x / k;
        sum += term;
    }
    return std::exp(-x) * sum;
}

/// Closed-form probability that a frame sent from distance d is received.
inline double reception_probability(const ChannelParams& params, double d) {
    if (!(d > 0)) throw std::domain_error("reception_probability requires d > 0");
    const double mean_dbm = mean_rx_power_dbm(params, effective_distance(d));
    const double x = params.m * std::pow(10.0, (params.threshold_dbm() - mean_dbm) / 10.0);
    return nakagami_success_probability(x, params.m);
}

enum class Outcome : std::uint8_t { Received = 0, Faded = 1, Collided = 2 };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Received: return "received";
        case Outcome::Faded: return "faded";
        case Outcome::Collided: return "collided";
    }
    return "?";
}

enum class FrameKind : std::uint8_t { Beacon = 0, Emergency = 1 };

/// One frame on the air. Engine bookkeeping (kind, key, hop) rides along
/// with the wire bytes.
struct Transmission {
    std::vector<std::uint8_t> frame;
    VehicleId sender = 0;
    Position origin{};  // sender position at start
    SimTime start = 0;
    SimTime duration_us = 0;

    FrameKind kind = FrameKind::Beacon;
    MsgKey key{};   // emergency frames: originated-message key
    int hop = 0;    // 0 = origination, k = k-th rebroadcast ring

    SimTime end() const { return start + duration_us; }

    bool overlaps(SimTime s, SimTime e) const { return start < e && s < end(); }
};

/// Resolves one (transmission, receiver) pair. Any concurrent transmission
/// whose mean power at the receiver is not at least capture_threshold_db
/// below the signal's collides it (the receiver's own concurrent
/// transmission always does); otherwise reception succeeds with the
/// closed-form fading probability.
inline Outcome deliver(const Transmission& tx, VehicleId rx, const Position& rx_pos,
                       std::span<const Transmission* const> concurrent,
                       const ChannelParams& params, std::mt19937_64& rng) {
    const double d = effective_distance(distance(tx.origin, rx_pos));
    const double signal_dbm = mean_rx_power_dbm(params, d);

    for (const Transmission* other : concurrent) {
        if (other == &tx) continue;
        if (!other->overlaps(tx.start, tx.end())) continue;
        if (other->sender == rx) return Outcome::Collided;  // half-duplex
        const double di = effective_distance(distance(other->origin, rx_pos));
        const double interferer_dbm = mean_rx_power_dbm(params, di);
        if (interferer_dbm > signal_dbm - params.capture_threshold_db) {
            return Outcome::Collided;
        }
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < reception_probability(params, d) ? Outcome::Received : Outcome::Faded;
}

/// Carrier sense: true iff some active transmission's mean power at pos
/// exceeds the carrier-sense threshold.
inline bool channel_busy(const Position& pos, SimTime t,
                         std::span<const Transmission* const> active,
                         const ChannelParams& params) {
    for (const Transmission* tx : active) {
        if (!(tx->start <= t && t < tx->end())) continue;
        const double d = effective_distance(distance(tx->origin, pos));
        if (mean_rx_power_dbm(params, d) >= params.carrier_sense_dbm()) return true;
    }
    return false;
}

}  // namespace vanet
