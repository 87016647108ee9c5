#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vanet/channel.hpp"
#include "vanet/forwarder.hpp"
#include "vanet/mac.hpp"
#include "vanet/protocols.hpp"
#include "vanet/types.hpp"

namespace vanet {

/// Config-file problem with a line-precise message. CLI maps this to exit 2.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& where, int line, const std::string& what_arg)
        : std::runtime_error(line > 0 ? where + ":" + std::to_string(line) + ": " + what_arg
                                      : where + ": " + what_arg) {}
};

/// One scheduled danger detection.
struct DangerEvent {
    SimTime t_us = 0;
    int code = 1;
    double origin_x_m = 0.0;  // triggers on the vehicle nearest this position
};

/// Full experiment description: highway scenario defaults plus channel, MAC,
/// beaconing and protocol knobs. Field defaults are the standard desk
/// scenario (200 vehicles, 2 km, 3 lanes, 10 s, 10 Hz beacons).
struct ScenarioConfig {
    double duration_s = 10.0;
    int vehicle_count = 200;
    double road_length_m = 2000.0;
    int lane_count = 3;
    double speed_min_kmh = 20.0;
    double speed_max_kmh = 120.0;
    bool bidirectional = false;
    double min_headway_m = 5.0;

    double beacon_rate_hz = 10.0;
    double beacon_ttl_ms = 300.0;

    ChannelParams channel;
    MacParams mac;
    PsoParams pso;
    int n_max = 10;

    std::vector<ProtocolKind> protocols;  // run_experiment iterates these
    int hop_cap = 4;
    std::vector<DangerEvent> danger_schedule;  // empty -> default schedule

    double metrics_bin_width_m = 100.0;
    double metrics_sample_every_ms = 1000.0;

    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::string output_dir = "out";

    SimTime duration_us() const { return seconds_to_us(duration_s); }
    SimTime beacon_period_us() const { return static_cast<SimTime>(kMicrosPerSecond / beacon_rate_hz); }
    SimTime beacon_ttl_us() const { return static_cast<SimTime>(beacon_ttl_ms * 1000.0); }

    /// Danger schedule with the default filled in: one safety-of-life event
    /// per second starting at t = 1 s, originated near the 95% road mark.
    std::vector<DangerEvent> effective_danger_schedule() const {
        if (!danger_schedule.empty()) return danger_schedule;
        std::vector<DangerEvent> events;
        const double origin = 0.95 * road_length_m;
        for (SimTime t = kMicrosPerSecond; t < duration_us(); t += kMicrosPerSecond) {
            events.push_back(DangerEvent{t, 1, origin});
        }
        return events;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

inline std::vector<KeyValue> read_key_values(std::istream& in, const std::string& name) {
    std::vector<KeyValue> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(name, line_no, "expected key = value");
        }
        KeyValue kv;
        kv.key = trim(line.substr(0, eq));
        kv.value = trim(line.substr(eq + 1));
        kv.line = line_no;
        if (kv.key.empty()) throw ConfigError(name, line_no, "empty key");
        out.push_back(kv);
    }
    return out;
}

}  // namespace detail

/// Applies one `key = value` setting. Unknown keys and malformed values are
/// rejected with the given location.
inline void apply_config_key(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                             const std::string& where = "<arg>", int line = 0) {
    auto fail = [&](const std::string& msg) -> void { throw ConfigError(where, line, msg); };

    auto as_double = [&](const std::string& v) {
        try {
            std::size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters in number '" + v + "'");
            return d;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
        return 0.0;
    };
    auto as_int = [&](const std::string& v) {
        const double d = as_double(v);
        const auto i = static_cast<std::int64_t>(d);
        if (static_cast<double>(i) != d) fail("expected an integer, got '" + v + "'");
        return i;
    };
    auto as_bool = [&](const std::string& v) {
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        fail("expected true/false, got '" + v + "'");
        return false;
    };

    if (key == "sim.duration_s") cfg.duration_s = as_double(value);
    else if (key == "sim.vehicle_count") cfg.vehicle_count = static_cast<int>(as_int(value));
    else if (key == "road.length_m") cfg.road_length_m = as_double(value);
    else if (key == "road.lanes") cfg.lane_count = static_cast<int>(as_int(value));
    else if (key == "mobility.speed_min_kmh") cfg.speed_min_kmh = as_double(value);
    else if (key == "mobility.speed_max_kmh") cfg.speed_max_kmh = as_double(value);
    else if (key == "mobility.bidirectional") cfg.bidirectional = as_bool(value);
    else if (key == "mobility.min_headway_m") cfg.min_headway_m = as_double(value);
    else if (key == "beacon.rate_hz") cfg.beacon_rate_hz = as_double(value);
    else if (key == "beacon.ttl_ms") cfg.beacon_ttl_ms = as_double(value);
    else if (key == "channel.m") cfg.channel.m = static_cast<int>(as_int(value));
    else if (key == "channel.path_loss_exponent") cfg.channel.path_loss_exponent = as_double(value);
    else if (key == "channel.tx_power_dbm") cfg.channel.tx_power_dbm = as_double(value);
    else if (key == "channel.noise_floor_dbm") cfg.channel.noise_floor_dbm = as_double(value);
    else if (key == "channel.snr_threshold_db") cfg.channel.snr_threshold_db = as_double(value);
    else if (key == "channel.range_m") cfg.channel.range_m = as_double(value);
    else if (key == "channel.capture_db") cfg.channel.capture_threshold_db = as_double(value);
    else if (key == "channel.cs_offset_db") cfg.channel.carrier_sense_offset_db = as_double(value);
    else if (key == "mac.slot_us") cfg.mac.slot_us = as_int(value);
    else if (key == "mac.sifs_us") cfg.mac.sifs_us = as_int(value);
    else if (key == "mac.difs_us") cfg.mac.difs_us = as_int(value);
    else if (key == "mac.cw_min") cfg.mac.cw_min = static_cast<int>(as_int(value));
    else if (key == "mac.cw_max") cfg.mac.cw_max = static_cast<int>(as_int(value));
    else if (key == "mac.data_rate_bps") cfg.mac.data_rate_bps = as_int(value);
    else if (key == "mac.plcp_us") cfg.mac.plcp_us = as_int(value);
    else if (key == "mac.symbol_us") cfg.mac.symbol_us = as_int(value);
    else if (key == "mac.cw_in_slots") cfg.mac.cw_in_slots = as_bool(value);
    else if (key == "pcbb.n_max") cfg.n_max = static_cast<int>(as_int(value));
    else if (key == "pcbb.w_range") {
        auto parts = detail::split(value, ',');
        if (parts.size() != 2) fail("pcbb.w_range expects 'lo,hi'");
        cfg.pso.w_min = as_double(parts[0]);
        cfg.pso.w_max = as_double(parts[1]);
    } else if (key == "pcbb.c1") cfg.pso.c1 = as_double(value);
    else if (key == "pcbb.c2") cfg.pso.c2 = as_double(value);
    else if (key == "pcbb.rand_range") {
        auto parts = detail::split(value, ',');
        if (parts.size() != 2) fail("pcbb.rand_range expects 'lo,hi'");
        cfg.pso.rand_min = as_double(parts[0]);
        cfg.pso.rand_max = as_double(parts[1]);
    } else if (key == "protocol.kind") {
        cfg.protocols.clear();
        for (const auto& name : detail::split(value, ',')) {
            auto kind = protocol_from_string(name);
            if (!kind) fail("unknown protocol '" + name + "' (expected pcbb, cbb or emdv)");
            cfg.protocols.push_back(*kind);
        }
        if (cfg.protocols.empty()) fail("protocol.kind must name at least one protocol");
    } else if (key == "protocol.hop_cap") cfg.hop_cap = static_cast<int>(as_int(value));
    else if (key == "protocol.danger_schedule") {
        cfg.danger_schedule.clear();
        for (const auto& entry : detail::split(value, ';')) {
            if (entry.empty()) continue;
            auto parts = detail::split(entry, ':');
            if (parts.size() != 3) fail("danger entry expects 't_ms:code:origin_x_m'");
            DangerEvent ev;
            ev.t_us = as_int(parts[0]) * 1000;
            ev.code = static_cast<int>(as_int(parts[1]));
            ev.origin_x_m = as_double(parts[2]);
            cfg.danger_schedule.push_back(ev);
        }
    } else if (key == "metrics.bin_width_m") cfg.metrics_bin_width_m = as_double(value);
    else if (key == "metrics.sample_every_ms") cfg.metrics_sample_every_ms = as_double(value);
    else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : detail::split(value, ',')) {
            if (s.empty()) fail("empty seed entry");
            cfg.seeds.push_back(static_cast<std::uint64_t>(as_int(s)));
        }
        if (cfg.seeds.empty()) fail("seeds must list at least one seed");
    } else if (key == "output_dir") cfg.output_dir = value;
    else fail("unknown config key '" + key + "'");
}

inline ScenarioConfig parse_config(std::istream& in, const std::string& name) {
    ScenarioConfig cfg;
    cfg.protocols.clear();  // protocol.kind is mandatory in files
    for (const auto& kv : detail::read_key_values(in, name)) {
        apply_config_key(cfg, kv.key, kv.value, name, kv.line);
    }
    return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    return parse_config(in, path);
}

/// Range validation; called before any run.
inline void validate(const ScenarioConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError("config", 0, msg); };
    if (cfg.duration_s <= 0) fail("sim.duration_s must be > 0");
    if (cfg.vehicle_count < 1) fail("sim.vehicle_count must be >= 1");
    if (cfg.road_length_m <= 0) fail("road.length_m must be > 0");
    if (cfg.lane_count < 1) fail("road.lanes must be >= 1");
    if (cfg.speed_min_kmh <= 0 || cfg.speed_max_kmh < cfg.speed_min_kmh) {
        fail("mobility speed range invalid");
    }
    if (cfg.min_headway_m <= 0) fail("mobility.min_headway_m must be > 0");
    if (cfg.beacon_rate_hz <= 0) fail("beacon.rate_hz must be > 0");
    if (cfg.beacon_ttl_ms <= 0) fail("beacon.ttl_ms must be > 0");
    if (cfg.channel.m < 1) fail("channel.m must be an integer >= 1");
    if (cfg.channel.path_loss_exponent <= 0) fail("channel.path_loss_exponent must be > 0");
    if (cfg.mac.slot_us <= 0 || cfg.mac.difs_us <= 0 || cfg.mac.sifs_us <= 0) {
        fail("mac timing constants must be positive");
    }
    if (cfg.mac.cw_min < 0 || cfg.mac.cw_max < cfg.mac.cw_min) fail("mac contention window range invalid");
    if (cfg.mac.data_rate_bps <= 0 || cfg.mac.plcp_us <= 0 || cfg.mac.symbol_us <= 0) {
        fail("mac rate/duration constants must be positive");
    }
    if (cfg.n_max < 1) fail("pcbb.n_max must be >= 1");
    if (!(cfg.pso.w_min > 0 && cfg.pso.w_max >= cfg.pso.w_min)) fail("pcbb.w_range invalid");
    if (!(cfg.pso.rand_min > 0 && cfg.pso.rand_max >= cfg.pso.rand_min)) fail("pcbb.rand_range invalid");
    if (cfg.protocols.empty()) fail("missing required key 'protocol.kind'");
    if (cfg.hop_cap < 0) fail("protocol.hop_cap must be >= 0");
    for (const auto& ev : cfg.danger_schedule) {
        if (ev.t_us < 0) fail("danger_schedule time must be >= 0");
        classify(ev.code);
        if (ev.origin_x_m < 0 || ev.origin_x_m > cfg.road_length_m) {
            fail("danger_schedule origin outside road");
        }
    }
    if (cfg.metrics_bin_width_m <= 0) fail("metrics.bin_width_m must be > 0");
    if (cfg.metrics_sample_every_ms <= 0) fail("metrics.sample_every_ms must be > 0");
    if (cfg.seeds.empty()) fail("seeds must list at least one seed");
}

/// FNV-1a over every behavior-affecting key. The protocol list and output
/// paths are excluded on purpose: the hash exists so runs of *different*
/// protocols over the same scenario can be compared.
inline std::uint64_t scenario_hash(const ScenarioConfig& cfg) {
    std::string repr;
    auto add = [&repr](const std::string& k, const std::string& v) {
        repr += k;
        repr += '=';
        repr += v;
        repr += '\n';
    };
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return std::string(buf);
    };
    add("sim.duration_s", num(cfg.duration_s));
    add("sim.vehicle_count", num(cfg.vehicle_count));
    add("road.length_m", num(cfg.road_length_m));
    add("road.lanes", num(cfg.lane_count));
    add("mobility.speed_min_kmh", num(cfg.speed_min_kmh));
    add("mobility.speed_max_kmh", num(cfg.speed_max_kmh));
    add("mobility.bidirectional", cfg.bidirectional ? "1" : "0");
    add("mobility.min_headway_m", num(cfg.min_headway_m));
    add("beacon.rate_hz", num(cfg.beacon_rate_hz));
    add("beacon.ttl_ms", num(cfg.beacon_ttl_ms));
    add("channel.m", num(cfg.channel.m));
    add("channel.path_loss_exponent", num(cfg.channel.path_loss_exponent));
    add("channel.tx_power_dbm", num(cfg.channel.tx_power_dbm));
    add("channel.noise_floor_dbm", num(cfg.channel.noise_floor_dbm));
    add("channel.snr_threshold_db", num(cfg.channel.snr_threshold_db));
    add("channel.range_m", num(cfg.channel.range_m));
    add("channel.capture_db", num(cfg.channel.capture_threshold_db));
    add("channel.cs_offset_db", num(cfg.channel.carrier_sense_offset_db));
    add("mac.slot_us", num(static_cast<double>(cfg.mac.slot_us)));
    add("mac.sifs_us", num(static_cast<double>(cfg.mac.sifs_us)));
    add("mac.difs_us", num(static_cast<double>(cfg.mac.difs_us)));
    add("mac.cw_min", num(cfg.mac.cw_min));
    add("mac.cw_max", num(cfg.mac.cw_max));
    add("mac.data_rate_bps", num(static_cast<double>(cfg.mac.data_rate_bps)));
    add("mac.plcp_us", num(static_cast<double>(cfg.mac.plcp_us)));
    add("mac.symbol_us", num(static_cast<double>(cfg.mac.symbol_us)));
    add("mac.cw_in_slots", cfg.mac.cw_in_slots ? "1" : "0");
    add("pcbb.n_max", num(cfg.n_max));
    add("pcbb.w_range", num(cfg.pso.w_min) + "," + num(cfg.pso.w_max));
    add("pcbb.c1", num(cfg.pso.c1));
    add("pcbb.c2", num(cfg.pso.c2));
    add("pcbb.rand_range", num(cfg.pso.rand_min) + "," + num(cfg.pso.rand_max));
    add("protocol.hop_cap", num(cfg.hop_cap));
    for (const auto& ev : cfg.effective_danger_schedule()) {
        add("danger", num(static_cast<double>(ev.t_us)) + ":" + num(ev.code) + ":" + num(ev.origin_x_m));
    }
    add("metrics.bin_width_m", num(cfg.metrics_bin_width_m));
    add("metrics.sample_every_ms", num(cfg.metrics_sample_every_ms));
    for (auto s : cfg.seeds) add("seed", std::to_string(s));

    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : repr) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace vanet
