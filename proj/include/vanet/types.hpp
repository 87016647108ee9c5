#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vanet {

/// Simulation time in integer microseconds since run start.
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerSecond = 1'000'000;

constexpr SimTime seconds_to_us(double s) {
    return static_cast<SimTime>(s * static_cast<double>(kMicrosPerSecond));
}

/// Vehicle identifier, unique within a scenario.
using VehicleId = std::uint32_t;

/// Sentinel for "no vehicle" in wire formats and optional fields.
inline constexpr VehicleId kNoVehicle = 0xFFFFFFFFu;

/// Longitudinal position on a straight multi-lane road.
struct Position {
    double x = 0.0;  // meters along the road axis
    int lane = 1;    // 1-based lane index
};

/// Longitudinal separation between two positions; lanes are ignored.
inline double distance(const Position& sen_pos, const Position& for_pos) {
    return std::fabs(sen_pos.x - for_pos.x);
}

/// Message priority classes, ordered most to least urgent.
enum class Priority : std::uint8_t { SafetyOfLife = 0, Safety = 1, NonSafety = 2 };

inline const char* to_string(Priority p) {
    switch (p) {
        case Priority::SafetyOfLife: return "safety-of-life";
        case Priority::Safety: return "safety";
        case Priority::NonSafety: return "non-safety";
    }
    return "?";
}

/// An emergency-message category code (1..7) with its priority class.
struct MessageCode {
    int code = 1;
    Priority priority_class = Priority::SafetyOfLife;

    bool operator==(const MessageCode&) const = default;
};

/// Maps a raw code to its category. Codes 1-2 are safety-of-life,
/// 3-4 safety, 5-7 non-safety. Anything else is rejected.
inline MessageCode classify(int code) {
    if (code < 1 || code > 7) {
        throw std::invalid_argument("message code out of range 1..7: " + std::to_string(code));
    }
    Priority p = code <= 2 ? Priority::SafetyOfLife
               : code <= 4 ? Priority::Safety
                           : Priority::NonSafety;
    return MessageCode{code, p};
}

inline bool is_safety_of_life(int code) { return code == 1 || code == 2; }

/// Key identifying an originated emergency message across rebroadcast hops.
struct MsgKey {
    VehicleId sender = 0;
    std::uint32_t msg_id = 0;

    auto operator<=>(const MsgKey&) const = default;
};

}  // namespace vanet
