#pragma once

#include <algorithm>
#include <cstdio>
#include <deque>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <vector>

#include "vanet/beaconing.hpp"
#include "vanet/channel.hpp"
#include "vanet/config.hpp"
#include "vanet/mac.hpp"
#include "vanet/message.hpp"
#include "vanet/mobility.hpp"
#include "vanet/protocols.hpp"
#include "vanet/types.hpp"

namespace vanet {

enum class EventKind : std::uint8_t {
    BeaconDue = 0,
    TxStart = 1,
    TxEnd = 2,
    DeliveryResolve = 3,
    ContentionFire = 4,
    DangerDetect = 5,
    MetricsSample = 6,
};

enum class TraceKind : std::uint8_t {
    TxStart = 0,
    TxEnd = 1,
    Delivery = 2,
    ContentionFire = 3,
    DangerDetect = 4,
    MetricsSample = 5,
};

inline const char* to_string(TraceKind k) {
    switch (k) {
        case TraceKind::TxStart: return "tx_start";
        case TraceKind::TxEnd: return "tx_end";
        case TraceKind::Delivery: return "delivery";
        case TraceKind::ContentionFire: return "contention_fire";
        case TraceKind::DangerDetect: return "danger_detect";
        case TraceKind::MetricsSample: return "metrics_sample";
    }
    return "?";
}

enum class TraceOutcome : std::uint8_t {
    None = 0,
    Received = 1,
    Faded = 2,
    Collided = 3,
    Rebroadcast = 4,
    Cancel = 5,
};

inline const char* to_string(TraceOutcome o) {
    switch (o) {
        case TraceOutcome::None: return "-";
        case TraceOutcome::Received: return "received";
        case TraceOutcome::Faded: return "faded";
        case TraceOutcome::Collided: return "collided";
        case TraceOutcome::Rebroadcast: return "rebroadcast";
        case TraceOutcome::Cancel: return "cancel";
    }
    return "?";
}

/// One resolved event. Beacon frames carry msg_id = 0xFFFFFFFF.
struct TraceRecord {
    SimTime time_us = 0;
    TraceKind kind = TraceKind::TxStart;
    VehicleId vehicle = 0;
    std::uint32_t msg_sender = 0;
    std::uint32_t msg_id = 0;
    TraceOutcome outcome = TraceOutcome::None;
    float x_m = 0.0f;
    FrameKind frame = FrameKind::Beacon;
    std::uint8_t hop = 0;
};

inline constexpr std::uint32_t kBeaconMsgId = 0xFFFFFFFFu;

/// Append-only resolved-event log of one run.
struct EventTrace {
    SimTime horizon_us = 0;
    std::vector<TraceRecord> records;
};

/// Order-stable content hash, used for byte-identity checks across runs.
inline std::uint64_t trace_hash(const EventTrace& trace) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    mix(&trace.horizon_us, sizeof(trace.horizon_us));
    for (const TraceRecord& r : trace.records) {
        mix(&r.time_us, sizeof(r.time_us));
        mix(&r.kind, sizeof(r.kind));
        mix(&r.vehicle, sizeof(r.vehicle));
        mix(&r.msg_sender, sizeof(r.msg_sender));
        mix(&r.msg_id, sizeof(r.msg_id));
        mix(&r.outcome, sizeof(r.outcome));
        mix(&r.x_m, sizeof(r.x_m));
        mix(&r.frame, sizeof(r.frame));
        mix(&r.hop, sizeof(r.hop));
    }
    return h;
}

/// time_us, event_kind, vehicle_id, msg_sender, msg_id, outcome, x_m
inline void write_trace_csv(std::ostream& os, const EventTrace& trace) {
    os << "time_us,event_kind,vehicle_id,msg_sender,msg_id,outcome,x_m\n";
    char buf[160];
    for (const TraceRecord& r : trace.records) {
        std::snprintf(buf, sizeof(buf), "%lld,%s,%u,%u,%u,%s,%.3f\n",
                      static_cast<long long>(r.time_us), to_string(r.kind), r.vehicle,
                      r.msg_sender, r.msg_id, to_string(r.outcome), static_cast<double>(r.x_m));
        os << buf;
    }
}

/// Deterministic single-threaded discrete-event simulation of one scenario
/// under one protocol. All randomness flows through one seeded generator in
/// event order, so a (config, seed) pair fully determines the trace.
class Simulation {
public:
    Simulation(ScenarioConfig cfg, ProtocolKind protocol, std::uint64_t seed)
        : cfg_(std::move(cfg)), protocol_(protocol), rng_(seed) {
        validate(cfg_);
        emergency_duration_us_ = tx_duration(cfg_.mac, kFrameSize);
        beacon_duration_us_ = tx_duration(cfg_.mac, kBeaconFrameSize);
        max_frame_us_ = std::max(emergency_duration_us_, beacon_duration_us_);
    }

    /// Spawns the fleet from the run seed and simulates to the horizon.
    EventTrace run() {
        SpawnParams sp;
        sp.count = cfg_.vehicle_count;
        sp.road_length_m = cfg_.road_length_m;
        sp.lane_count = cfg_.lane_count;
        sp.speed_min_mps = cfg_.speed_min_kmh / 3.6;
        sp.speed_max_mps = cfg_.speed_max_kmh / 3.6;
        sp.min_headway_m = cfg_.min_headway_m;
        sp.bidirectional = cfg_.bidirectional;
        return run_with_fleet(spawn_fleet(sp, rng_));
    }

    /// Runs over an externally constructed fleet (test scenarios).
    EventTrace run_with_fleet(Fleet fleet) {
        fleet_ = std::move(fleet);
        init_vehicles();
        schedule_sources();
        event_loop();
        trace_.horizon_us = cfg_.duration_us();
        return std::move(trace_);
    }

    const Fleet& fleet() const { return fleet_; }

private:
    struct Event {
        SimTime at = 0;
        std::uint64_t seq = 0;
        EventKind kind = EventKind::BeaconDue;
        std::uint32_t a = 0;  // vehicle / tx index / entry index
        std::uint32_t b = 0;  // generation counter for TxStart

        bool operator>(const Event& o) const {
            if (at != o.at) return at > o.at;
            return seq > o.seq;
        }
    };

    struct QueuedFrame {
        FrameKind kind = FrameKind::Beacon;
        int priority = 3;  // 0..2 emergency classes, 3 beacons
        std::vector<std::uint8_t> bytes;
        MsgKey key{};
        int hop = 0;
        bool is_rebroadcast = false;
    };

    struct PendingTx {
        QueuedFrame frame;
        SimTime t_ready = 0;
        int backoff_slots = 0;
        SimTime grant = 0;
        std::uint32_t generation = 0;
    };

    struct VehicleCtx {
        NeighborTable nt;
        ForwardingState fs;
        SimTime beacon_phase = 0;
        std::deque<QueuedFrame> queue;
        std::optional<PendingTx> pending;
        std::uint32_t generation = 0;
        std::uint32_t next_msg_id = 1;

        explicit VehicleCtx(VehicleId id) : nt(id) {}
    };

    struct ContentionEntry {
        VehicleId vehicle = 0;
        EmergencyMessage msg;
        int hop = 0;
        SimTime fire_at = 0;
    };

    // --- setup -------------------------------------------------------------

    void init_vehicles() {
        if (fleet_.vehicles.empty()) throw ConfigError("config", 0, "fleet must not be empty");
        vehicles_.clear();
        vehicles_.reserve(fleet_.vehicles.size());
        for (VehicleId id = 0; id < fleet_.vehicles.size(); ++id) {
            vehicles_.emplace_back(id);
        }
        const SimTime period = cfg_.beacon_period_us();
        std::uniform_int_distribution<SimTime> phase(0, period - 1);
        for (auto& ctx : vehicles_) ctx.beacon_phase = phase(rng_);
    }

    void schedule_sources() {
        const SimTime horizon = cfg_.duration_us();
        for (VehicleId id = 0; id < vehicles_.size(); ++id) {
            if (vehicles_[id].beacon_phase < horizon) {
                push_event(vehicles_[id].beacon_phase, EventKind::BeaconDue, id);
            }
        }
        danger_schedule_ = cfg_.effective_danger_schedule();
        for (std::uint32_t i = 0; i < danger_schedule_.size(); ++i) {
            if (danger_schedule_[i].t_us < horizon) {
                push_event(danger_schedule_[i].t_us, EventKind::DangerDetect, i);
            }
        }
        const auto sample = static_cast<SimTime>(cfg_.metrics_sample_every_ms * 1000.0);
        for (SimTime t = sample; t < horizon; t += sample) {
            push_event(t, EventKind::MetricsSample, 0);
        }
    }

    // --- event loop ----------------------------------------------------------

    void event_loop() {
        // Sources stop at the horizon; in-flight frames and timers drain so
        // every TxStart meets its TxEnd.
        while (!events_.empty()) {
            Event ev = events_.top();
            events_.pop();
            now_ = ev.at;
            switch (ev.kind) {
                case EventKind::BeaconDue: handle_beacon_due(ev.a); break;
                case EventKind::TxStart: handle_tx_start(ev.a, ev.b); break;
                case EventKind::TxEnd: handle_tx_end(ev.a); break;
                case EventKind::DeliveryResolve: handle_delivery(ev.a); break;
                case EventKind::ContentionFire: handle_contention_fire(ev.a); break;
                case EventKind::DangerDetect: handle_danger(ev.a); break;
                case EventKind::MetricsSample: handle_metrics_sample(); break;
            }
        }
    }

    void push_event(SimTime at, EventKind kind, std::uint32_t a, std::uint32_t b = 0) {
        events_.push(Event{at, next_seq_++, kind, a, b});
    }

    // --- handlers ------------------------------------------------------------

    void handle_beacon_due(VehicleId id) {
        VehicleCtx& ctx = vehicles_[id];
        const Vehicle& v = fleet_.vehicles[id];
        const Beacon b = emit_beacon(v, fleet_.position_at(id, now_), now_, ctx.fs.last_lbest);
        auto bytes = encode_beacon(b);
        QueuedFrame f;
        f.kind = FrameKind::Beacon;
        f.priority = 3;
        f.bytes.assign(bytes.begin(), bytes.end());
        f.key = MsgKey{id, kBeaconMsgId};
        enqueue_frame(id, std::move(f));

        const SimTime next = now_ + cfg_.beacon_period_us();
        if (next < cfg_.duration_us()) push_event(next, EventKind::BeaconDue, id);
    }

    void handle_danger(std::uint32_t idx) {
        const DangerEvent& ev = danger_schedule_[idx];
        VehicleId origin = 0;
        double best = std::numeric_limits<double>::infinity();
        for (VehicleId id = 0; id < vehicles_.size(); ++id) {
            const double d = std::fabs(fleet_.position_at(id, now_).x - ev.origin_x_m);
            if (d < best) {
                best = d;
                origin = id;
            }
        }
        VehicleCtx& ctx = vehicles_[origin];
        ctx.nt.prune(now_, cfg_.beacon_ttl_us());
        const SenderInfo sender{origin, fleet_.position_at(origin, now_),
                                fleet_.vehicles[origin].heading};
        const EmergencyMessage msg =
            on_danger_detected(sender, ctx.nt, ctx.fs, protocol_, cfg_.pso, cfg_.n_max, ev.code,
                               ctx.next_msg_id++, now_, rng_);

        TraceRecord rec;
        rec.time_us = now_;
        rec.kind = TraceKind::DangerDetect;
        rec.vehicle = origin;
        rec.msg_sender = msg.sender_id;
        rec.msg_id = msg.msg_id;
        rec.x_m = static_cast<float>(sender.pos.x);
        rec.frame = FrameKind::Emergency;
        trace_.records.push_back(rec);

        auto bytes = encode(msg);
        QueuedFrame f;
        f.kind = FrameKind::Emergency;
        f.priority = static_cast<int>(classify(msg.code).priority_class);
        f.bytes.assign(bytes.begin(), bytes.end());
        f.key = msg.key();
        f.hop = 0;
        f.is_rebroadcast = false;
        enqueue_frame(origin, std::move(f));
    }

    void handle_metrics_sample() {
        TraceRecord rec;
        rec.time_us = now_;
        rec.kind = TraceKind::MetricsSample;
        rec.vehicle = kNoVehicle;
        trace_.records.push_back(rec);
    }

    void enqueue_frame(VehicleId id, QueuedFrame&& frame) {
        vehicles_[id].queue.push_back(std::move(frame));
        kick_mac(id);
    }

    /// Starts carrier sense for the head-of-line frame (highest priority
    /// class first, FIFO within a class) if nothing is pending.
    void kick_mac(VehicleId id) {
        VehicleCtx& ctx = vehicles_[id];
        if (ctx.pending || ctx.queue.empty()) return;
        auto best = ctx.queue.begin();
        for (auto it = ctx.queue.begin(); it != ctx.queue.end(); ++it) {
            if (it->priority < best->priority) best = it;
        }
        PendingTx p;
        p.frame = std::move(*best);
        ctx.queue.erase(best);
        p.t_ready = now_;
        p.backoff_slots = draw_backoff(cfg_.mac.cw_min, rng_);
        p.generation = ++ctx.generation;
        p.grant = compute_grant(id, p.t_ready, p.backoff_slots);
        ctx.pending = std::move(p);
        push_event(ctx.pending->grant, EventKind::TxStart, id, ctx.pending->generation);
    }

    /// Busy intervals at this vehicle (own frames always count), merged.
    std::vector<BusyInterval> busy_intervals(VehicleId id, SimTime from) const {
        const Position pos = fleet_.position_at(id, from);
        std::vector<BusyInterval> busy;
        const SimTime lookback = from - max_frame_us_ - cfg_.mac.difs_us;
        for (std::size_t i = first_tx_at_or_after(lookback); i < transmissions_.size(); ++i) {
            const Transmission& tx = transmissions_[i];
            if (tx.end() <= from - cfg_.mac.difs_us) continue;
            if (tx.sender != id) {
                const double d = effective_distance(distance(tx.origin, pos));
                if (mean_rx_power_dbm(cfg_.channel, d) < cfg_.channel.carrier_sense_dbm()) continue;
            }
            if (!busy.empty() && tx.start <= busy.back().end) {
                busy.back().end = std::max(busy.back().end, tx.end());
            } else {
                busy.push_back(BusyInterval{tx.start, tx.end()});
            }
        }
        return busy;
    }

    SimTime compute_grant(VehicleId id, SimTime t_ready, int backoff_slots) const {
        const auto busy = busy_intervals(id, t_ready);
        return csma_grant_time(cfg_.mac, t_ready, backoff_slots, busy);
    }

    std::size_t first_tx_at_or_after(SimTime t) const {
        auto it = std::lower_bound(
            transmissions_.begin(), transmissions_.end(), t,
            [](const Transmission& tx, SimTime value) { return tx.start < value; });
        return static_cast<std::size_t>(it - transmissions_.begin());
    }

    void handle_tx_start(VehicleId id, std::uint32_t generation) {
        VehicleCtx& ctx = vehicles_[id];
        if (!ctx.pending || ctx.pending->generation != generation) return;  // stale
        PendingTx& p = *ctx.pending;
        if (p.grant != now_) return;  // superseded reschedule

        const SimTime grant = compute_grant(id, p.t_ready, p.backoff_slots);
        if (grant > now_) {
            p.grant = grant;
            push_event(grant, EventKind::TxStart, id, p.generation);
            return;
        }

        // Sense-before-send: a rebroadcast is abandoned once the message has
        // been heard from someone else or already sent by this vehicle.
        if (p.frame.is_rebroadcast && (ctx.fs.heard_rebroadcast.count(p.frame.key) ||
                                       ctx.fs.transmitted.count(p.frame.key))) {
            trace_contention(id, p.frame.key, TraceOutcome::Cancel, p.frame.hop);
            ctx.pending.reset();
            kick_mac(id);
            return;
        }
        if (p.frame.kind == FrameKind::Emergency && ctx.fs.transmitted.count(p.frame.key)) {
            ctx.pending.reset();
            kick_mac(id);
            return;
        }

        Transmission tx;
        tx.frame = std::move(p.frame.bytes);
        tx.sender = id;
        tx.origin = fleet_.position_at(id, now_);
        tx.start = now_;
        tx.duration_us = p.frame.kind == FrameKind::Beacon ? beacon_duration_us_
                                                           : emergency_duration_us_;
        tx.kind = p.frame.kind;
        tx.key = p.frame.key;
        tx.hop = p.frame.hop;
        if (tx.kind == FrameKind::Emergency) ctx.fs.transmitted.insert(tx.key);

        TraceRecord rec;
        rec.time_us = now_;
        rec.kind = TraceKind::TxStart;
        rec.vehicle = id;
        rec.msg_sender = tx.key.sender;
        rec.msg_id = tx.key.msg_id;
        rec.x_m = static_cast<float>(tx.origin.x);
        rec.frame = tx.kind;
        rec.hop = static_cast<std::uint8_t>(tx.hop);
        trace_.records.push_back(rec);

        const SimTime tx_end = now_ + tx.duration_us;
        transmissions_.push_back(std::move(tx));
        push_event(tx_end, EventKind::TxEnd,
                   static_cast<std::uint32_t>(transmissions_.size() - 1));
        ctx.pending.reset();
        kick_mac(id);
    }

    void handle_tx_end(std::uint32_t tx_idx) {
        const Transmission& tx = transmissions_[tx_idx];
        TraceRecord rec;
        rec.time_us = now_;
        rec.kind = TraceKind::TxEnd;
        rec.vehicle = tx.sender;
        rec.msg_sender = tx.key.sender;
        rec.msg_id = tx.key.msg_id;
        rec.x_m = static_cast<float>(tx.origin.x);
        rec.frame = tx.kind;
        rec.hop = static_cast<std::uint8_t>(tx.hop);
        trace_.records.push_back(rec);
        push_event(now_, EventKind::DeliveryResolve, tx_idx);
    }

    void handle_delivery(std::uint32_t tx_idx) {
        // No commits happen inside this handler, so references stay stable.
        const Transmission& tx = transmissions_[tx_idx];

        std::vector<const Transmission*> concurrent;
        for (std::size_t i = first_tx_at_or_after(tx.start - max_frame_us_);
             i < transmissions_.size(); ++i) {
            if (i == tx_idx) continue;
            const Transmission& other = transmissions_[i];
            if (other.start >= tx.end()) break;
            if (other.overlaps(tx.start, tx.end())) concurrent.push_back(&transmissions_[i]);
        }

        std::optional<EmergencyMessage> msg;
        if (tx.kind == FrameKind::Emergency) msg = decode(tx.frame);
        std::optional<Beacon> beacon;
        if (tx.kind == FrameKind::Beacon) beacon = decode_beacon(tx.frame);

        for (VehicleId rx = 0; rx < vehicles_.size(); ++rx) {
            if (rx == tx.sender) continue;
            const Position rx_pos = fleet_.position_at(rx, now_);
            const double d = effective_distance(distance(tx.origin, rx_pos));
            if (mean_rx_power_dbm(cfg_.channel, d) < cfg_.channel.rx_floor_dbm()) continue;

            const Outcome outcome = deliver(tx, rx, rx_pos, concurrent, cfg_.channel, rng_);

            TraceRecord rec;
            rec.time_us = now_;
            rec.kind = TraceKind::Delivery;
            rec.vehicle = rx;
            rec.msg_sender = tx.key.sender;
            rec.msg_id = tx.key.msg_id;
            rec.outcome = outcome == Outcome::Received  ? TraceOutcome::Received
                          : outcome == Outcome::Faded   ? TraceOutcome::Faded
                                                        : TraceOutcome::Collided;
            rec.x_m = static_cast<float>(rx_pos.x);
            rec.frame = tx.kind;
            rec.hop = static_cast<std::uint8_t>(tx.hop);
            trace_.records.push_back(rec);

            if (outcome != Outcome::Received) continue;
            if (beacon) {
                vehicles_[rx].nt.ingest(*beacon, now_);
            } else if (msg) {
                dispatch_emergency(rx, rx_pos, *msg, tx);
            }
        }
    }

    void dispatch_emergency(VehicleId rx, const Position& rx_pos, const EmergencyMessage& msg,
                            const Transmission& tx) {
        VehicleCtx& ctx = vehicles_[rx];
        const RxAction action =
            on_emergency_received(ctx.fs, rx, rx_pos, msg, tx.origin, cfg_.mac.slot_us);
        if (tx.hop + 1 > cfg_.hop_cap) return;  // forwarding capped, reception already counted

        if (action.kind == RxActionKind::RebroadcastNow) {
            schedule_rebroadcast(rx, msg, tx.hop + 1);
        } else if (action.kind == RxActionKind::ScheduleContention) {
            const SimTime fire = now_ + static_cast<SimTime>(std::llround(action.contention_wait_us));
            ctx.fs.pending[msg.key()] = fire;
            contention_entries_.push_back(ContentionEntry{rx, msg, tx.hop + 1, fire});
            push_event(fire, EventKind::ContentionFire,
                       static_cast<std::uint32_t>(contention_entries_.size() - 1));
        }
    }

    void handle_contention_fire(std::uint32_t entry_idx) {
        const ContentionEntry entry = contention_entries_[entry_idx];
        VehicleCtx& ctx = vehicles_[entry.vehicle];
        auto it = ctx.fs.pending.find(entry.msg.key());
        if (it == ctx.fs.pending.end() || it->second != entry.fire_at) return;  // stale
        ctx.fs.pending.erase(it);

        const bool busy_same = same_message_on_air(entry.vehicle, entry.msg.key());
        const FireDecision decision = contention_fire(ctx.fs, entry.msg.key(), busy_same);
        trace_contention(entry.vehicle, entry.msg.key(),
                         decision == FireDecision::Rebroadcast ? TraceOutcome::Rebroadcast
                                                               : TraceOutcome::Cancel,
                         entry.hop);
        if (decision == FireDecision::Rebroadcast) {
            schedule_rebroadcast(entry.vehicle, entry.msg, entry.hop);
        }
    }

    bool same_message_on_air(VehicleId id, MsgKey key) const {
        const Position pos = fleet_.position_at(id, now_);
        for (std::size_t i = first_tx_at_or_after(now_ - max_frame_us_);
             i < transmissions_.size(); ++i) {
            const Transmission& tx = transmissions_[i];
            if (!(tx.start <= now_ && now_ < tx.end())) continue;
            if (tx.kind != FrameKind::Emergency || !(tx.key == key)) continue;
            const double d = effective_distance(distance(tx.origin, pos));
            if (mean_rx_power_dbm(cfg_.channel, d) >= cfg_.channel.carrier_sense_dbm()) return true;
        }
        return false;
    }

    /// Multi-hop continuation: the rebroadcaster re-runs the sender pipeline
    /// over its own NT, keeping the original key, timestamp and payload.
    void schedule_rebroadcast(VehicleId id, const EmergencyMessage& original, int hop) {
        VehicleCtx& ctx = vehicles_[id];
        if (ctx.fs.transmitted.count(original.key())) return;
        ctx.nt.prune(now_, cfg_.beacon_ttl_us());

        EmergencyMessage msg = original;
        msg.candidate_id.reset();
        msg.min_b.reset();
        msg.max_b.reset();
        const SenderInfo sender{id, fleet_.position_at(id, now_), fleet_.vehicles[id].heading};
        fill_forwarding_fields(msg, sender, ctx.nt, ctx.fs, protocol_, cfg_.pso, cfg_.n_max, rng_);

        auto bytes = encode(msg);
        QueuedFrame f;
        f.kind = FrameKind::Emergency;
        f.priority = static_cast<int>(classify(msg.code).priority_class);
        f.bytes.assign(bytes.begin(), bytes.end());
        f.key = msg.key();
        f.hop = hop;
        f.is_rebroadcast = true;
        enqueue_frame(id, std::move(f));
    }

    void trace_contention(VehicleId id, MsgKey key, TraceOutcome outcome, int hop) {
        TraceRecord rec;
        rec.time_us = now_;
        rec.kind = TraceKind::ContentionFire;
        rec.vehicle = id;
        rec.msg_sender = key.sender;
        rec.msg_id = key.msg_id;
        rec.outcome = outcome;
        rec.x_m = static_cast<float>(fleet_.position_at(id, now_).x);
        rec.frame = FrameKind::Emergency;
        rec.hop = static_cast<std::uint8_t>(hop);
        trace_.records.push_back(rec);
    }

    ScenarioConfig cfg_;
    ProtocolKind protocol_;
    std::mt19937_64 rng_;
    SimTime emergency_duration_us_ = 0;
    SimTime beacon_duration_us_ = 0;
    SimTime max_frame_us_ = 0;

    Fleet fleet_;
    std::vector<VehicleCtx> vehicles_;
    std::vector<DangerEvent> danger_schedule_;
    std::vector<Transmission> transmissions_;  // committed, ascending start
    std::vector<ContentionEntry> contention_entries_;

    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    std::uint64_t next_seq_ = 0;
    SimTime now_ = 0;
    EventTrace trace_;
};

/// Convenience wrapper: one protocol, one seed, defaults from config.
inline EventTrace run_scenario(const ScenarioConfig& cfg, ProtocolKind protocol,
                               std::uint64_t seed) {
    Simulation sim(cfg, protocol, seed);
    return sim.run();
}

}  // namespace vanet
