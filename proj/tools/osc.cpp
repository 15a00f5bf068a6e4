// osc: order-statistic concomitant envelopes from the command line.
//
//   osc verify   --config scenario.json [--out DIR]
//   osc envelope --config scenario.json --m 4
//   osc converge --config scenario.json
//   osc oracle   --config scenario.json [--seed S]

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "osc/commands.hpp"
#include "osc/errors.hpp"
#include "osc/scenario.hpp"

namespace {

void print_summary(const std::string& command, const osc::CommandResult& res) {
    if (command == "verify") {
        for (const auto& c : res.report.at("checks")) {
            const auto& passed = c.at("passed");
            const char* tag = passed.is_null() ? "SKIP" : (passed.get<bool>() ? "PASS" : "FAIL");
            std::cout << '[' << tag << "] " << c.at("name").get<std::string>();
            if (c.contains("measured") && !c.at("measured").is_null())
                std::cout << "  measured=" << c.at("measured").dump() << " tol=" << c.at("tolerance").dump();
            if (!c.at("gating").get<bool>()) std::cout << "  (not gating)";
            std::cout << '\n';
        }
    } else if (command == "oracle") {
        std::cout << "coverage=" << res.report.at("coverage").dump() << " passed=" << res.report.at("passed").dump()
                  << '\n';
        if (res.report.contains("warning")) std::cout << "warning: " << res.report.at("warning").get<std::string>() << '\n';
    } else if (res.report.contains("warning")) {
        std::cout << "warning: " << res.report.at("warning").get<std::string>() << '\n';
    }
    for (const auto& f : res.files) std::cout << "wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concomitant joint cdfs and majorization envelopes"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    std::int64_t m = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Scenario file (JSON)")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "Seed override");
        sub->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
        sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    };
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    auto* envelope = app.add_subcommand("envelope", "Emit H, F, K grids for one m");
    auto* converge = app.add_subcommand("converge", "Emit the gap sweep over m");
    auto* oracle = app.add_subcommand("oracle", "Monte Carlo cross-check of the quadrature engine");
    for (auto* sub : {verify, envelope, converge, oracle}) add_common(sub);
    envelope->add_option("--m", m, "Weight-sequence index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : osc::kExitUsage;
    }

    osc::ScenarioConfig config;
    try {
        config = osc::load_config(config_path);
        if (out_dir) config.out_dir = *out_dir;
        if (seed) config.seed = *seed;
        if (format) config.format = *format;
        if (threads) config.threads = *threads;
        osc::validate(config);
    } catch (const std::exception& e) {
        std::cerr << "osc: " << e.what() << '\n';
        return osc::kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        osc::CommandResult res;
        if (command == "verify") res = osc::cmd_verify(config);
        else if (command == "envelope") res = osc::cmd_envelope(config, m);
        else if (command == "converge") res = osc::cmd_converge(config);
        else res = osc::cmd_oracle(config);
        print_summary(command, res);
        return res.exit_code;
    } catch (const osc::ConfigError& e) {
        std::cerr << "osc: " << e.what() << '\n';
        return osc::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "osc: " << e.what() << '\n';
        return osc::kExitCheckFailure;
    }
}
