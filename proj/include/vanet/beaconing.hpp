#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "vanet/message.hpp"
#include "vanet/mobility.hpp"
#include "vanet/types.hpp"

namespace vanet {

/// Freshest known state of one neighbor, built from its beacons.
struct NeighborEntry {
    VehicleId id = 0;
    Position position{};
    double speed = 0.0;
    int heading = 1;
    SimTime last_seen = 0;
    std::optional<float> reported_lbest;
};

/// Per-vehicle neighbor table (NT). Never contains the owner; entries age
/// out after a TTL and all forwarder selection reads go through here.
class NeighborTable {
public:
    explicit NeighborTable(VehicleId owner = 0) : owner_(owner) {}

    VehicleId owner() const { return owner_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(VehicleId id) const { return entries_.count(id) != 0; }

    const NeighborEntry* find(VehicleId id) const {
        auto it = entries_.find(id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Upsert from a delivered beacon. Beacons from the owner are ignored.
    void ingest(const Beacon& b, SimTime now) {
        if (b.sender_id == owner_) return;
        NeighborEntry& e = entries_[b.sender_id];
        e.id = b.sender_id;
        e.position = b.position;
        e.speed = b.speed;
        e.heading = b.heading;
        e.last_seen = now;
        if (b.piggyback_lbest) e.reported_lbest = b.piggyback_lbest;
    }

    /// Drops every entry older than ttl.
    void prune(SimTime now, SimTime ttl_us) {
        if (ttl_us <= 0) throw std::invalid_argument("prune requires ttl > 0");
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (now - it->second.last_seen > ttl_us) {
                it = entries_.erase(it);
            } else {
                ++it;
            }
        }
    }

    /// Best fitness-boundary value reported by any neighbor (the CRNT view);
    /// absent when no neighbor has piggybacked one.
    std::optional<float> gbest_from_crnt() const {
        std::optional<float> best;
        for (const auto& [id, e] : entries_) {
            if (!e.reported_lbest) continue;
            if (!best || *e.reported_lbest > *best) best = e.reported_lbest;
        }
        return best;
    }

    /// Neighbors behind the sender (opposite its heading), sorted by
    /// distance descending; ties broken by lower id.
    std::vector<NeighborEntry> rear_neighbors(const Position& sender_pos, int heading) const {
        std::vector<NeighborEntry> rear;
        for (const auto& [id, e] : entries_) {
            const double dx = sender_pos.x - e.position.x;
            if (heading > 0 ? dx > 0 : dx < 0) rear.push_back(e);
        }
        std::sort(rear.begin(), rear.end(), [&](const NeighborEntry& a, const NeighborEntry& b) {
            const double da = distance(sender_pos, a.position);
            const double db = distance(sender_pos, b.position);
            if (da != db) return da > db;
            return a.id < b.id;
        });
        return rear;
    }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    VehicleId owner_;
    std::map<VehicleId, NeighborEntry> entries_;
};

/// Builds the beacon a vehicle emits at time t.
inline Beacon emit_beacon(const Vehicle& v, const Position& current, SimTime t,
                          std::optional<float> last_lbest) {
    Beacon b;
    b.sender_id = v.id;
    b.position = current;
    b.speed = v.speed;
    b.heading = v.heading;
    b.timestamp = t;
    b.piggyback_lbest = last_lbest;
    return b;
}

}  // namespace vanet
