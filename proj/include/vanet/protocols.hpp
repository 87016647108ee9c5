#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "vanet/forwarder.hpp"
#include "vanet/message.hpp"
#include "vanet/types.hpp"

namespace vanet {

enum class ProtocolKind : std::uint8_t { Pcbb = 0, Cbb = 1, Emdv = 2 };

inline const char* to_string(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::Pcbb: return "pcbb";
        case ProtocolKind::Cbb: return "cbb";
        case ProtocolKind::Emdv: return "emdv";
    }
    return "?";
}

inline std::optional<ProtocolKind> protocol_from_string(const std::string& s) {
    if (s == "pcbb") return ProtocolKind::Pcbb;
    if (s == "cbb") return ProtocolKind::Cbb;
    if (s == "emdv") return ProtocolKind::Emdv;
    return std::nullopt;
}

/// Deterministic wait before a segment vehicle may try to rebroadcast:
/// T_c = T_slot * ((1 - dis / max_b) * 100). Farther vehicles wait less;
/// the vehicle at max_b waits nothing.
inline double contention_time_us(double dis, double max_b, SimTime t_slot_us) {
    if (!(max_b > 0)) throw std::domain_error("contention_time requires max_b > 0");
    if (dis < 0 || dis > max_b) throw std::invalid_argument("contention_time requires 0 <= dis <= max_b");
    return static_cast<double>(t_slot_us) * (1.0 - dis / max_b) * 100.0;
}

/// Per-vehicle forwarding state shared by all three protocols.
struct ForwardingState {
    std::set<MsgKey> seen;                 // duplicate suppression, grows monotonically
    std::set<MsgKey> transmitted;          // frames this vehicle already put on the air
    std::set<MsgKey> heard_rebroadcast;    // a second copy arrived; contention cancels
    std::map<MsgKey, SimTime> pending;     // scheduled contention fire per message
    PsoState pso;
    std::optional<float> last_lbest;       // piggybacked on the next beacons
    std::int64_t decode_errors = 0;
};

struct SenderInfo {
    VehicleId id = 0;
    Position pos{};
    int heading = 1;
};

/// Candidate/boundary insertion per protocol and rear-neighbor count:
/// no rear neighbor leaves everything absent, exactly one sets only the
/// candidate, two or more add boundaries (PCBB/CBB) while EMDV always stops
/// at the candidate.
inline void fill_forwarding_fields(EmergencyMessage& msg, const SenderInfo& sender,
                                   const NeighborTable& nt, ForwardingState& fs,
                                   ProtocolKind protocol, const PsoParams& pso_params,
                                   int n_max, std::mt19937_64& rng) {
    const auto rear = nt.rear_neighbors(sender.pos, sender.heading);
    if (rear.empty()) return;

    msg.candidate_id = rear.front().id;
    const double dis = distance(sender.pos, rear.front().position);
    if (rear.size() < 2 || protocol == ProtocolKind::Emdv) return;

    Boundaries b{};
    if (protocol == ProtocolKind::Cbb) {
        b = cbb_boundaries(static_cast<int>(rear.size()), dis, n_max);
    } else {
        const ProgressList pl = cluster_segments(rear, sender.pos);
        if (pl.empty()) {
            b = cbb_boundaries(static_cast<int>(rear.size()), dis, n_max);
        } else {
            fs.pso.g_best = nt.gbest_from_crnt();
            b = pcbb_boundaries(pl, fs.pso, pso_params, dis, rng);
            fs.last_lbest = static_cast<float>(fs.pso.l_best);
        }
    }
    msg.min_b = static_cast<float>(b.min_b);
    msg.max_b = static_cast<float>(b.max_b);
}

/// Danger handler on the originating vehicle: classify, build the message,
/// pick forwarding fields from the current NT, and mark it seen so the
/// sender never re-forwards its own warning.
inline EmergencyMessage on_danger_detected(const SenderInfo& sender, const NeighborTable& nt,
                                           ForwardingState& fs, ProtocolKind protocol,
                                           const PsoParams& pso_params, int n_max, int code,
                                           std::uint32_t msg_id, SimTime t,
                                           std::mt19937_64& rng) {
    classify(code);
    EmergencyMessage msg;
    msg.sender_id = sender.id;
    msg.code = code;
    msg.timestamp = t;
    msg.msg_id = msg_id;
    fill_forwarding_fields(msg, sender, nt, fs, protocol, pso_params, n_max, rng);
    fs.seen.insert(msg.key());
    return msg;
}

enum class RxActionKind : std::uint8_t { RebroadcastNow = 0, ScheduleContention = 1, Drop = 2 };

struct RxAction {
    RxActionKind kind = RxActionKind::Drop;
    double contention_wait_us = 0.0;  // valid for ScheduleContention
};

/// Receive path shared by all protocols. Duplicates are dropped (and count
/// as hearing a rebroadcast), non-safety codes are recorded but never
/// forwarded, the designated candidate rebroadcasts immediately, and other
/// receivers inside [MinB, MaxB] of the transmitter schedule contention.
inline RxAction on_emergency_received(ForwardingState& fs, VehicleId self,
                                      const Position& self_pos, const EmergencyMessage& msg,
                                      const Position& tx_origin, SimTime t_slot_us) {
    const MsgKey key = msg.key();
    if (fs.seen.count(key)) {
        fs.heard_rebroadcast.insert(key);
        return RxAction{RxActionKind::Drop, 0.0};
    }
    fs.seen.insert(key);

    if (!is_safety_of_life(msg.code)) return RxAction{RxActionKind::Drop, 0.0};
    if (msg.candidate_id && *msg.candidate_id == self) {
        return RxAction{RxActionKind::RebroadcastNow, 0.0};
    }
    if (msg.min_b && msg.max_b) {
        const double dis = distance(tx_origin, self_pos);
        if (dis >= *msg.min_b && dis <= *msg.max_b) {
            return RxAction{RxActionKind::ScheduleContention,
                            contention_time_us(dis, *msg.max_b, t_slot_us)};
        }
    }
    return RxAction{RxActionKind::Drop, 0.0};
}

/// EMDV receive rule: its frames carry a candidate and no boundaries, so
/// only the designated forwarder ever rebroadcasts.
inline RxAction emdv_behavior(ForwardingState& fs, VehicleId self, const Position& self_pos,
                              const EmergencyMessage& msg, const Position& tx_origin,
                              SimTime t_slot_us) {
    return on_emergency_received(fs, self, self_pos, msg, tx_origin, t_slot_us);
}

enum class FireDecision : std::uint8_t { Rebroadcast = 0, Cancel = 1 };

/// Contention-timer expiry: cancel when the message has been heard again or
/// is already on the air, otherwise rebroadcast.
inline FireDecision contention_fire(const ForwardingState& fs, MsgKey key,
                                    bool channel_busy_with_same) {
    if (fs.heard_rebroadcast.count(key) || fs.transmitted.count(key) || channel_busy_with_same) {
        return FireDecision::Cancel;
    }
    return FireDecision::Rebroadcast;
}

}  // namespace vanet
