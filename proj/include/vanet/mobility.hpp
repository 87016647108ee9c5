#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include "vanet/types.hpp"

namespace vanet {

/// Kinematic state of one vehicle. Motion is constant-velocity on a
/// wrap-around road, so positions at any time derive exactly from the
/// spawn-time state.
struct Vehicle {
    VehicleId id = 0;
    Position position{};
    double speed = 0.0;  // m/s, fixed for the whole run
    int heading = 1;     // +1 or -1
};

struct SpawnParams {
    int count = 200;
    double road_length_m = 2000.0;
    int lane_count = 3;
    double speed_min_mps = 20.0 / 3.6;
    double speed_max_mps = 120.0 / 3.6;
    double min_headway_m = 5.0;  // same-lane spawn separation
    bool bidirectional = false;
};

/// A spawned highway fleet. Vehicle ids are dense 0..count-1 and index
/// straight into the vector.
struct Fleet {
    std::vector<Vehicle> vehicles;
    double road_length_m = 0.0;
    int lane_count = 0;

    /// Exact position of a vehicle at time t (torus road).
    Position position_at(VehicleId id, SimTime t) const {
        const Vehicle& v = vehicles[id];
        double dx = v.heading * v.speed * (static_cast<double>(t) / kMicrosPerSecond);
        double x = std::fmod(v.position.x + dx, road_length_m);
        if (x < 0) x += road_length_m;
        return Position{x, v.position.lane};
    }
};

/// Places `count` vehicles uniformly over road and lanes with a minimum
/// same-lane headway, drawing everything from the supplied generator.
/// Fails if the road cannot hold the requested count at that headway.
inline Fleet spawn_fleet(const SpawnParams& p, std::mt19937_64& rng) {
    if (p.count < 1) throw std::invalid_argument("vehicle count must be >= 1");
    if (p.road_length_m <= 0 || p.lane_count < 1) {
        throw std::invalid_argument("road length and lane count must be positive");
    }
    if (!(p.speed_min_mps > 0) || p.speed_max_mps < p.speed_min_mps) {
        throw std::invalid_argument("speed range invalid");
    }

    const int slots_per_lane = static_cast<int>(std::floor(p.road_length_m / p.min_headway_m));
    if (static_cast<long long>(slots_per_lane) * p.lane_count < p.count) {
        throw std::runtime_error("road too short to satisfy min headway for requested count");
    }

    std::uniform_int_distribution<int> lane_dist(1, p.lane_count);
    std::vector<std::vector<VehicleId>> per_lane(p.lane_count + 1);
    for (VehicleId id = 0; id < static_cast<VehicleId>(p.count); ++id) {
        // rejection keeps lane occupancy within per-lane capacity
        int lane = lane_dist(rng);
        while (static_cast<int>(per_lane[lane].size()) >= slots_per_lane) {
            lane = lane_dist(rng);
        }
        per_lane[lane].push_back(id);
    }

    Fleet fleet;
    fleet.vehicles.resize(p.count);
    fleet.road_length_m = p.road_length_m;
    fleet.lane_count = p.lane_count;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int lane = 1; lane <= p.lane_count; ++lane) {
        const auto& ids = per_lane[lane];
        const int n = static_cast<int>(ids.size());
        if (n == 0) continue;
        // uniform placement with guaranteed gaps: draw in the shrunk road,
        // sort, then re-insert one headway per vehicle
        const double usable = p.road_length_m - static_cast<double>(n) * p.min_headway_m;
        std::vector<double> offsets(n);
        for (auto& o : offsets) o = unit(rng) * usable;
        std::sort(offsets.begin(), offsets.end());
        for (int i = 0; i < n; ++i) {
            double x = offsets[i] + static_cast<double>(i) * p.min_headway_m;
            fleet.vehicles[ids[i]].position = Position{x, lane};
        }
    }

    std::uniform_real_distribution<double> speed_dist(p.speed_min_mps, p.speed_max_mps);
    std::uniform_int_distribution<int> coin(0, 1);
    for (VehicleId id = 0; id < static_cast<VehicleId>(p.count); ++id) {
        Vehicle& v = fleet.vehicles[id];
        v.id = id;
        v.speed = speed_dist(rng);
        v.heading = p.bidirectional ? (coin(rng) ? 1 : -1) : 1;
    }
    return fleet;
}

inline Fleet spawn_fleet(const SpawnParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return spawn_fleet(p, rng);
}

/// Advances all vehicles by dt with wrap-around; speeds unchanged.
inline Fleet advance(const Fleet& fleet, SimTime dt) {
    if (dt <= 0) throw std::invalid_argument("advance requires dt > 0");
    Fleet out = fleet;
    for (auto& v : out.vehicles) {
        v.position = fleet.position_at(v.id, dt);
    }
    return out;
}

/// Snapshot export: time_us, vehicle_id, x_m, lane, speed_mps
inline void write_fleet_csv(std::ostream& os, const Fleet& fleet, SimTime t) {
    os << "time_us,vehicle_id,x_m,lane,speed_mps\n";
    char buf[128];
    for (const auto& v : fleet.vehicles) {
        Position pos = fleet.position_at(v.id, t);
        std::snprintf(buf, sizeof(buf), "%lld,%u,%.3f,%d,%.3f\n", static_cast<long long>(t),
                      v.id, pos.x, pos.lane, v.speed);
        os << buf;
    }
}

}  // namespace vanet
