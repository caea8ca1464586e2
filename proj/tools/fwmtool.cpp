// fwmtool: plan, spectrum, sweep, noise and oracle-check front end.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "fwm/commands.hpp"
#include "fwm/error.hpp"
#include "fwm/kv_text.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string constants_path;
    std::string out_dir = "out";
    fwm::OutputFormat format = fwm::OutputFormat::Csv;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
};

fwm::RbLedger load_ledger(const Options& o) {
    if (o.constants_path.empty()) return fwm::RbLedger::standard();
    return fwm::RbLedger(fwm::RbConstants::load(o.constants_path));
}

fwm::RunConfig load_config(const Options& o, const fwm::RbLedger& ledger) {
    const fwm::FrequencyPlanner planner(ledger);
    if (o.config_path.empty()) return fwm::parse_run_config("", planner);
    try {
        return fwm::parse_run_config(fwm::read_text_file(o.config_path), planner);
    } catch (const fwm::ConfigError& e) {
        throw fwm::ConfigError(o.config_path + ": " + e.what(), e.line());
    }
}

void add_common(CLI::App* cmd, Options& o, bool with_config) {
    if (with_config) {
        cmd->add_option("--config", o.config_path, "key = value run config")->check(CLI::ExistingFile);
        cmd->add_option("--constants", o.constants_path, "override the D1 constants file")->check(CLI::ExistingFile);
    }
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    const std::map<std::string, fwm::OutputFormat> formats{
        {"csv", fwm::OutputFormat::Csv}, {"svg", fwm::OutputFormat::Svg}, {"both", fwm::OutputFormat::Both}};
    cmd->add_option("--format", o.format, "csv, svg or both (CSV is always written)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-wave-mixing squeezing planner and noise-budget toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* plan = app.add_subcommand("plan", "beam frequencies, detunings and feasibility");
    auto* spectrum = app.add_subcommand("spectrum", "vapor transmission spectrum and line markers");
    auto* sweep = app.add_subcommand("sweep", "squeezing versus probe detuning");
    auto* noise = app.add_subcommand("noise", "loss and gain budget at the planned point");
    auto* oracle = app.add_subcommand("oracle-check", "closed-form noise vs Gaussian-state simulation");
    for (auto* cmd : {plan, spectrum, sweep, noise}) add_common(cmd, o, true);
    add_common(oracle, o, false);
    oracle->add_option("--trials", o.trials, "number of random trials")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // --help exits 0, any usage error 2
    }

    try {
        fwm::CommandOutput out;
        if (oracle->parsed()) {
            out = fwm::cmd_oracle_check(o.trials, o.seed);
        } else {
            const auto ledger = load_ledger(o);
            const auto config = load_config(o, ledger);
            if (plan->parsed()) out = fwm::cmd_plan(config, ledger);
            if (spectrum->parsed()) out = fwm::cmd_spectrum(config, o.format, ledger);
            if (sweep->parsed()) out = fwm::cmd_sweep(config, o.format, ledger);
            if (noise->parsed()) out = fwm::cmd_noise(config, ledger);
        }
        fwm::write_outputs(out, o.out_dir);
        std::cout << out.text;
        return out.exit_code;
    } catch (const fwm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const fwm::DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
