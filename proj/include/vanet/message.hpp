#pragma once

#include <array>
#include <cstring>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "vanet/types.hpp"

namespace vanet {

/// Every frame on the air is exactly this long.
inline constexpr std::size_t kFrameSize = 512;

// Emergency record layout, little-endian fixed-width fields:
//   sender_id u32 | code u8 | timestamp u64 | msg_id u32 |
//   candidate_id u32 (0xFFFFFFFF = absent) | min_b f32 (NaN = absent) |
//   max_b f32 (NaN = absent) | payload (zero-padded to 512 total)
inline constexpr std::size_t kEmergencyHeaderSize = 4 + 1 + 8 + 4 + 4 + 4 + 4;
inline constexpr std::size_t kEmergencyPayloadSize = kFrameSize - kEmergencyHeaderSize;

namespace detail {

template <typename T>
void store_le(std::uint8_t* out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    // assumes little-endian host, which cmake targets here are
    std::memcpy(out, &value, sizeof(T));
}

template <typename T>
T load_le(const std::uint8_t* in) {
    T value;
    std::memcpy(&value, in, sizeof(T));
    return value;
}

}  // namespace detail

/// Event-driven warning record. The payload is a fixed-capacity field;
/// shorter content is zero-padded at construction so encode/decode is an
/// exact round trip.
struct EmergencyMessage {
    VehicleId sender_id = 0;
    int code = 1;
    SimTime timestamp = 0;  // origination time, preserved across hops
    std::uint32_t msg_id = 0;
    std::array<std::uint8_t, kEmergencyPayloadSize> data{};
    std::optional<VehicleId> candidate_id;
    std::optional<float> min_b;  // meters
    std::optional<float> max_b;  // meters

    MsgKey key() const { return MsgKey{sender_id, msg_id}; }

    bool operator==(const EmergencyMessage&) const = default;
};

inline void validate(const EmergencyMessage& m) {
    classify(m.code);  // throws on bad code
    if (m.timestamp < 0) throw std::invalid_argument("emergency message timestamp negative");
    if (m.min_b.has_value() != m.max_b.has_value()) {
        throw std::invalid_argument("emergency message carries only one boundary");
    }
    if (m.min_b && !(*m.min_b >= 0.0f && *m.min_b < *m.max_b)) {
        throw std::invalid_argument("emergency message boundaries must satisfy 0 <= MinB < MaxB");
    }
}

inline std::array<std::uint8_t, kFrameSize> encode(const EmergencyMessage& m) {
    validate(m);
    std::array<std::uint8_t, kFrameSize> out{};
    std::uint8_t* p = out.data();
    detail::store_le<std::uint32_t>(p, m.sender_id);
    p += 4;
    *p++ = static_cast<std::uint8_t>(m.code);
    detail::store_le<std::uint64_t>(p, static_cast<std::uint64_t>(m.timestamp));
    p += 8;
    detail::store_le<std::uint32_t>(p, m.msg_id);
    p += 4;
    detail::store_le<std::uint32_t>(p, m.candidate_id.value_or(kNoVehicle));
    p += 4;
    detail::store_le<float>(p, m.min_b.value_or(std::numeric_limits<float>::quiet_NaN()));
    p += 4;
    detail::store_le<float>(p, m.max_b.value_or(std::numeric_limits<float>::quiet_NaN()));
    p += 4;
    std::memcpy(p, m.data.data(), m.data.size());
    return out;
}

inline EmergencyMessage decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kFrameSize) {
        throw std::invalid_argument("emergency record must be exactly 512 bytes, got " +
                                    std::to_string(bytes.size()));
    }
    EmergencyMessage m;
    const std::uint8_t* p = bytes.data();
    m.sender_id = detail::load_le<std::uint32_t>(p);
    p += 4;
    m.code = *p++;
    m.timestamp = static_cast<SimTime>(detail::load_le<std::uint64_t>(p));
    p += 8;
    m.msg_id = detail::load_le<std::uint32_t>(p);
    p += 4;
    if (auto cid = detail::load_le<std::uint32_t>(p); cid != kNoVehicle) m.candidate_id = cid;
    p += 4;
    if (float lo = detail::load_le<float>(p); !std::isnan(lo)) m.min_b = lo;
    p += 4;
    if (float hi = detail::load_le<float>(p); !std::isnan(hi)) m.max_b = hi;
    p += 4;
    std::memcpy(m.data.data(), p, m.data.size());
    validate(m);
    return m;
}

/// Periodic status broadcast carrying the sender's kinematic state plus an
/// optional piggybacked lBest value (the CRNT input for neighbors).
struct Beacon {
    VehicleId sender_id = 0;
    Position position{};
    double speed = 0.0;  // m/s
    int heading = 1;     // +1 or -1 along the road axis
    SimTime timestamp = 0;
    std::optional<float> piggyback_lbest;

    bool operator==(const Beacon&) const = default;
};

// Neighbor entry wire layout (15 bytes):
//   id u32 | x f32 | speed f32 | lane u8 | heading i8 | flags u8
inline constexpr std::size_t kNeighborEntrySize = 15;

// Beacon frames carry one entry plus timestamp and piggyback; 512-byte
// beacons at 10 Hz x 200 vehicles would exceed the 6 Mbps channel outright
// (200*10*512*8 / 6e6 = 1.37), so they get their own small frame.
inline constexpr std::size_t kBeaconFrameSize = 64;

inline void encode_neighbor_entry(const Beacon& b, std::uint8_t* out) {
    detail::store_le<std::uint32_t>(out, b.sender_id);
    detail::store_le<float>(out + 4, static_cast<float>(b.position.x));
    detail::store_le<float>(out + 8, static_cast<float>(b.speed));
    out[12] = static_cast<std::uint8_t>(b.position.lane);
    out[13] = static_cast<std::uint8_t>(static_cast<std::int8_t>(b.heading));
    out[14] = 0;  // reserved
}

// Beacon frame: one 15-byte sender entry, timestamp u64, piggyback lBest f32
// (NaN = absent), zero-padded to the beacon frame size.
inline std::array<std::uint8_t, kBeaconFrameSize> encode_beacon(const Beacon& b) {
    std::array<std::uint8_t, kBeaconFrameSize> out{};
    encode_neighbor_entry(b, out.data());
    detail::store_le<std::uint64_t>(out.data() + kNeighborEntrySize,
                                    static_cast<std::uint64_t>(b.timestamp));
    detail::store_le<float>(out.data() + kNeighborEntrySize + 8,
                            b.piggyback_lbest.value_or(std::numeric_limits<float>::quiet_NaN()));
    return out;
}

inline Beacon decode_beacon(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kBeaconFrameSize) {
        throw std::invalid_argument("beacon frame must be exactly " +
                                    std::to_string(kBeaconFrameSize) + " bytes, got " +
                                    std::to_string(bytes.size()));
    }
    Beacon b;
    const std::uint8_t* p = bytes.data();
    b.sender_id = detail::load_le<std::uint32_t>(p);
    b.position.x = detail::load_le<float>(p + 4);
    b.speed = detail::load_le<float>(p + 8);
    b.position.lane = p[12];
    b.heading = static_cast<std::int8_t>(p[13]);
    b.timestamp = static_cast<SimTime>(detail::load_le<std::uint64_t>(p + kNeighborEntrySize));
    if (float v = detail::load_le<float>(p + kNeighborEntrySize + 8); !std::isnan(v)) {
        b.piggyback_lbest = v;
    }
    return b;
}

}  // namespace vanet
