#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "vanet/config.hpp"
#include "vanet/engine.hpp"
#include "vanet/metrics.hpp"
#include "vanet/types.hpp"

namespace vanet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

struct CliOptions {
    std::string config_path;
    std::optional<std::string> protocol_override;  // comma-separated kinds
    std::optional<std::string> seeds_override;     // comma-separated seeds
    std::optional<std::string> out_override;
    bool quiet = false;
    bool export_traces = false;
    bool export_fleet = false;
    int jobs = 1;
};

namespace cli_detail {

struct MetricStat {
    double mean = 0.0;
    double stddev = 0.0;
    int n = 0;
};

inline MetricStat stat_of(const std::vector<double>& xs) {
    MetricStat s;
    s.n = static_cast<int>(xs.size());
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / (xs.size() - 1));
    }
    return s;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path.string());
    os << content;
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

struct RunOutput {
    RunSummary summary;
};

inline RunOutput execute_run(const ScenarioConfig& cfg, ProtocolKind protocol, std::uint64_t seed,
                             const std::filesystem::path& dir, bool export_trace,
                             bool export_fleet_snapshot) {
    Simulation sim(cfg, protocol, seed);

    std::optional<std::string> fleet_csv;
    EventTrace trace;
    if (export_fleet_snapshot) {
        // spawn separately so the snapshot matches what the run sees
        std::mt19937_64 rng(seed);
        SpawnParams sp;
        sp.count = cfg.vehicle_count;
        sp.road_length_m = cfg.road_length_m;
        sp.lane_count = cfg.lane_count;
        sp.speed_min_mps = cfg.speed_min_kmh / 3.6;
        sp.speed_max_mps = cfg.speed_max_kmh / 3.6;
        sp.min_headway_m = cfg.min_headway_m;
        sp.bidirectional = cfg.bidirectional;
        Fleet fleet = spawn_fleet(sp, rng);
        std::ostringstream os;
        write_fleet_csv(os, fleet, 0);
        fleet_csv = os.str();
        trace = sim.run();
    } else {
        trace = sim.run();
    }

    const ReceptionCurve curve = reception_curve(trace, cfg.metrics_bin_width_m);
    const auto window_us = static_cast<SimTime>(cfg.metrics_sample_every_ms * 1000.0);
    const DelaySeries delay_t = delay_series(trace, window_us);
    const DelaySeries delay_d = delay_by_distance(trace, cfg.metrics_bin_width_m);
    const CollisionReport collisions = collision_report(trace);

    auto render = [](auto writer, const auto& value, auto... args) {
        std::ostringstream os;
        writer(os, value, args...);
        return os.str();
    };
    write_file(dir / "reception.csv",
               render([](std::ostream& o, const ReceptionCurve& c) { write_reception_csv(o, c); }, curve));
    write_file(dir / "reception.dat",
               render([](std::ostream& o, const ReceptionCurve& c) { write_reception_csv(o, c, true); }, curve));
    write_file(dir / "delay.csv",
               render([](std::ostream& o, const DelaySeries& d) { write_delay_csv(o, d, "t_s"); }, delay_t));
    write_file(dir / "delay.dat",
               render([](std::ostream& o, const DelaySeries& d) { write_delay_csv(o, d, "t_s", true); }, delay_t));
    write_file(dir / "delay_dist.csv",
               render([](std::ostream& o, const DelaySeries& d) { write_delay_csv(o, d, "dist_m"); }, delay_d));
    write_file(dir / "delay_dist.dat",
               render([](std::ostream& o, const DelaySeries& d) { write_delay_csv(o, d, "dist_m", true); }, delay_d));
    write_file(dir / "collisions.csv",
               render([](std::ostream& o, const CollisionReport& c) { write_collisions_csv(o, c); }, collisions));
    write_file(dir / "collisions.dat",
               render([](std::ostream& o, const CollisionReport& c) { write_collisions_csv(o, c, true); }, collisions));
    if (export_trace) {
        std::ostringstream os;
        write_trace_csv(os, trace);
        write_file(dir / "trace.csv", os.str());
    }
    if (fleet_csv) write_file(dir / "fleet.csv", *fleet_csv);

    return RunOutput{summarize_run(trace, cfg)};
}

}  // namespace cli_detail

/// Runs every configured protocol x seed, writes per-run metric files plus
/// an aggregated summary.csv. Returns a process exit code.
inline int run_experiment(const CliOptions& opt, std::ostream& log = std::cout,
                          std::ostream& err = std::cerr) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(opt.config_path);
        if (opt.protocol_override) {
            apply_config_key(cfg, "protocol.kind", *opt.protocol_override, "--protocol");
        }
        if (opt.seeds_override) apply_config_key(cfg, "seeds", *opt.seeds_override, "--seeds");
        if (opt.out_override) apply_config_key(cfg, "output_dir", *opt.out_override, "--out");
        validate(cfg);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        namespace fs = std::filesystem;
        const fs::path out_root(cfg.output_dir);

        struct Job {
            ProtocolKind protocol;
            std::uint64_t seed;
            fs::path dir;
        };
        std::vector<Job> jobs;
        for (ProtocolKind protocol : cfg.protocols) {
            for (std::uint64_t seed : cfg.seeds) {
                fs::path dir = out_root / to_string(protocol) / ("seed_" + std::to_string(seed));
                fs::create_directories(dir);
                jobs.push_back(Job{protocol, seed, dir});
            }
        }

        std::vector<cli_detail::RunOutput> results(jobs.size());
        const int workers = std::max(1, opt.jobs);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
                results[i] = cli_detail::execute_run(cfg, jobs[i].protocol, jobs[i].seed,
                                                     jobs[i].dir, opt.export_traces,
                                                     opt.export_fleet);
            }
        };
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::future<void>> futures;
            for (int w = 0; w < workers; ++w) futures.push_back(std::async(std::launch::async, worker));
            for (auto& f : futures) f.get();
        }

        if (!opt.quiet) {
            for (std::size_t i = 0; i < jobs.size(); ++i) {
                log << to_string(jobs[i].protocol) << " seed " << jobs[i].seed << ": done\n";
            }
        }

        // aggregate across seeds per protocol
        char buf[256];
        std::string summary;
        std::snprintf(buf, sizeof(buf), "# scenario_hash=%016llx\n",
                      static_cast<unsigned long long>(scenario_hash(cfg)));
        summary += buf;
        summary += "protocol,metric,mean,stddev,n\n";
        std::size_t idx = 0;
        for (ProtocolKind protocol : cfg.protocols) {
            std::vector<double> reception;
            std::vector<double> delay;
            std::vector<double> collision;
            for (std::size_t s = 0; s < cfg.seeds.size(); ++s, ++idx) {
                const RunSummary& r = results[idx].summary;
                if (r.reception_defined) reception.push_back(r.reception_beyond_1000);
                if (r.delay_defined) delay.push_back(r.mean_delay_final_us);
                collision.push_back(r.collision_ratio_final);
            }
            auto add_row = [&](const char* metric, const cli_detail::MetricStat& st) {
                std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.6f,%d\n", to_string(protocol),
                              metric, st.mean, st.stddev, st.n);
                summary += buf;
            };
            add_row("reception_1000_1500", cli_detail::stat_of(reception));
            add_row("mean_delay_final_us", cli_detail::stat_of(delay));
            add_row("collision_ratio_final", cli_detail::stat_of(collision));
        }
        cli_detail::write_file(out_root / "summary.csv", summary);
        if (!opt.quiet) log << "summary: " << (out_root / "summary.csv").string() << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

namespace cli_detail {

struct SummaryFile {
    std::string path;
    std::string hash;
    // rows[(protocol, metric)] = (mean, stddev, n)
    std::vector<std::tuple<std::string, std::string, MetricStat>> rows;
};

inline SummaryFile parse_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open summary file");
    SummaryFile out;
    out.path = path;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("# scenario_hash=", 0) == 0) {
            out.hash = line.substr(std::string("# scenario_hash=").size());
            continue;
        }
        if (line.empty() || line[0] == '#' || line.rfind("protocol,", 0) == 0) continue;
        auto parts = detail::split(line, ',');
        if (parts.size() != 5) throw ConfigError(path, line_no, "malformed summary row");
        MetricStat st;
        st.mean = std::stod(parts[2]);
        st.stddev = std::stod(parts[3]);
        st.n = std::stoi(parts[4]);
        out.rows.emplace_back(parts[0], parts[1], st);
    }
    if (out.hash.empty()) throw ConfigError(path, 0, "summary has no scenario hash");
    return out;
}

}  // namespace cli_detail

/// Side-by-side comparison of >= 2 summaries over the same scenario hash.
inline int compare_summaries(const std::vector<std::string>& paths, std::ostream& out = std::cout,
                             std::ostream& err = std::cerr) {
    if (paths.size() < 2) {
        err << "compare needs at least two summary files\n";
        return kExitConfig;
    }
    std::vector<cli_detail::SummaryFile> files;
    try {
        for (const auto& p : paths) files.push_back(cli_detail::parse_summary(p));
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    for (std::size_t i = 1; i < files.size(); ++i) {
        if (files[i].hash != files[0].hash) {
            err << "scenario hash mismatch: " << files[0].path << " (" << files[0].hash << ") vs "
                << files[i].path << " (" << files[i].hash << ")\n";
            return kExitConfig;
        }
    }

    struct Column {
        std::string label;
        const cli_detail::SummaryFile* file;
        std::string protocol;
    };
    std::vector<Column> columns;
    for (const auto& f : files) {
        std::vector<std::string> protocols;
        for (const auto& [protocol, metric, st] : f.rows) {
            if (std::find(protocols.begin(), protocols.end(), protocol) == protocols.end()) {
                protocols.push_back(protocol);
            }
        }
        for (const auto& p : protocols) columns.push_back(Column{p + " (" + f.path + ")", &f, p});
    }

    const std::vector<std::string> metrics = {"reception_1000_1500", "mean_delay_final_us",
                                              "collision_ratio_final"};
    char buf[256];
    out << "scenario " << files[0].hash << "\n";
    std::snprintf(buf, sizeof(buf), "%-24s", "metric");
    out << buf;
    for (const auto& c : columns) {
        std::snprintf(buf, sizeof(buf), "  %-36s", c.label.c_str());
        out << buf;
    }
    out << "\n";
    for (const auto& metric : metrics) {
        std::snprintf(buf, sizeof(buf), "%-24s", metric.c_str());
        out << buf;
        for (const auto& c : columns) {
            std::string cell = "-";
            for (const auto& [protocol, m, st] : c.file->rows) {
                if (protocol == c.protocol && m == metric) {
                    std::snprintf(buf, sizeof(buf), "%.6f +/- %.6f (n=%d)", st.mean, st.stddev,
                                  st.n);
                    cell = buf;
                }
            }
            std::snprintf(buf, sizeof(buf), "  %-36s", cell.c_str());
            out << buf;
        }
        out << "\n";
    }
    return kExitOk;
}

}  // namespace vanet
