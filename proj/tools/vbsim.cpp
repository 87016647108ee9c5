// vbsim: experiment harness for the vehicular emergency-broadcast simulator.
//
//   vbsim run --config configs/table3.cfg [--protocol pcbb] [--seeds 1,2,3]
//             [--out results] [--jobs 4] [--trace] [--fleet] [--quiet]
//   vbsim compare a/summary.csv b/summary.csv ...
//
// Exit codes: 0 success, 1 runtime failure, 2 config error.

#include <CLI11.hpp>

#include "vanet/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"VANET emergency-message broadcast simulator (PCBB / CBB / EMDV)"};
    app.require_subcommand(1);

    vanet::CliOptions opt;
    std::string protocol;
    std::string seeds;
    std::string out_dir;

    CLI::App* run = app.add_subcommand("run", "run the configured protocol/seed sweep");
    run->add_option("--config", opt.config_path, "scenario config file")->required();
    run->add_option("--protocol", protocol, "override protocol.kind (comma-separated)");
    run->add_option("--seeds", seeds, "override seeds (comma-separated)");
    run->add_option("--out", out_dir, "override output_dir");
    run->add_option("--jobs", opt.jobs, "parallel runs")->check(CLI::PositiveNumber);
    run->add_flag("--trace", opt.export_traces, "export the full event trace per run");
    run->add_flag("--fleet", opt.export_fleet, "export the spawned fleet snapshot per run");
    run->add_flag("--quiet", opt.quiet, "suppress progress output");

    std::vector<std::string> summaries;
    CLI::App* compare = app.add_subcommand("compare", "compare summary.csv files side by side");
    compare->add_option("summaries", summaries, "summary.csv paths")->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? vanet::kExitOk : vanet::kExitConfig;
    }

    if (run->parsed()) {
        if (!protocol.empty()) opt.protocol_override = protocol;
        if (!seeds.empty()) opt.seeds_override = seeds;
        if (!out_dir.empty()) opt.out_override = out_dir;
        return vanet::run_experiment(opt);
    }
    return vanet::compare_summaries(summaries);
}
