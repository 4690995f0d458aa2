#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "dynavg/acceptance.hpp"
#include "dynavg/config.hpp"
#include "dynavg/csv.hpp"

namespace fs = std::filesystem;

namespace {

using namespace dynavg;

std::string run_label(const RunConfig& cfg) {
    std::ostringstream name;
    name << to_string(cfg.protocol.kind);
    if (cfg.protocol.kind == ProtocolKind::Dynamic)
        name << "_delta" << format_shortest(cfg.protocol.delta);
    else if (cfg.protocol.kind == ProtocolKind::Static)
        name << "_b" << cfg.protocol.period;
    name << "_k" << cfg.k << "_seed" << cfg.stream.seed;
    return name.str();
}

SummaryRow make_summary_row(const RunConfig& cfg, const RunResult& res, double serial_ref) {
    SummaryRow row;
    row.protocol = to_string(cfg.protocol.kind);
    row.k = cfg.k;
    row.rounds = cfg.rounds;
    if (cfg.protocol.kind == ProtocolKind::Dynamic)
        row.delta_or_b = format_shortest(cfg.protocol.delta);
    else if (cfg.protocol.kind == ProtocolKind::Static)
        row.delta_or_b = std::to_string(cfg.protocol.period);
    row.seed = cfg.stream.seed;
    row.loss_cum = res.final_loss_cum();
    row.messages_total = res.ledger.messages_total;
    row.bytes_total = res.ledger.bytes_total;
    for (std::size_t v : res.violation_counts) row.violations_total += v;
    if (cfg.protocol.kind == ProtocolKind::Dynamic && cfg.protocol.delta > 0.0) {
        const Theorem1Check check = theorem1_check(res, cfg.protocol.delta, 1.0, cfg.k);
        row.theorem1_lhs = check.lhs;
        row.theorem1_rhs = check.rhs;
    }
    row.serial_loss_ref = serial_ref;
    return row;
}

int execute_runs(const ExperimentSpec& spec, const std::vector<RunConfig>& runs) {
    const fs::path out_dir = spec.output_path;
    fs::create_directories(out_dir);

    {
        std::ofstream echo(out_dir / "effective_config.txt");
        echo << render_config(spec);
    }

    // One serial reference per (k, seed); delta/b sweeps reuse it.
    std::map<std::pair<std::size_t, std::uint64_t>, double> serial_cache;
    auto serial_ref_for = [&](const RunConfig& cfg) {
        const auto key = std::make_pair(cfg.k, cfg.stream.seed);
        if (const auto it = serial_cache.find(key); it != serial_cache.end()) return it->second;
        RunConfig serial = cfg;
        serial.protocol.kind = ProtocolKind::Serial;
        serial.record_trajectory = false;
        const double loss = run_serial_baseline(serial).final_loss_cum();
        serial_cache.emplace(key, loss);
        return loss;
    };

    std::vector<SummaryRow> rows;
    rows.reserve(runs.size());
    for (const RunConfig& cfg : runs) {
        const RunResult res = run(cfg);
        double serial_ref = cfg.protocol.kind == ProtocolKind::Serial
                                ? res.final_loss_cum()
                                : serial_ref_for(cfg);
        if (cfg.protocol.kind == ProtocolKind::Serial)
            serial_cache.emplace(std::make_pair(cfg.k, cfg.stream.seed), serial_ref);

        const std::string label = run_label(cfg);
        emit_round_csv(res, out_dir / ("rounds_" + label + ".csv"));
        rows.push_back(make_summary_row(cfg, res, serial_ref));
        std::cout << label << ": loss_cum=" << format_shortest(res.final_loss_cum())
                  << " messages=" << res.ledger.messages_total
                  << " syncs=" << res.ledger.rounds_with_sync << "\n";
    }
    emit_summary(rows, out_dir / "summary.csv");
    std::cout << "wrote " << rows.size() << " run(s) to " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic simulator for distributed online learning protocols"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed_override = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (default: out)");
        return cmd->add_option("--seed", seed_override, "override the stream seed");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "execute the base configuration once");
    CLI::Option* run_seed = add_common(run_cmd);
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "expand the configured sweep and execute every run");
    CLI::Option* sweep_seed = add_common(sweep_cmd);
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run the built-in verification suite and print one line per criterion");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            const auto results = dynavg::run_acceptance_suite();
            for (const auto& r : results) std::cout << dynavg::format_criterion_line(r) << "\n";
            if (dynavg::all_passed(results)) {
                std::cout << "all criteria passed\n";
                return 0;
            }
            std::cout << "verification FAILED\n";
            return 2;
        }

        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file '" << config_path << "'\n";
            return 3;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();

        dynavg::ExperimentSpec spec = dynavg::parse_config(buffer.str());
        spec.output_path = out_dir;
        CLI::Option* seed_opt = run_cmd->parsed() ? run_seed : sweep_seed;
        if (seed_opt->count() > 0) spec.base.stream.seed = seed_override;

        const std::vector<dynavg::RunConfig> runs =
            run_cmd->parsed() ? std::vector<dynavg::RunConfig>{spec.base}
                              : dynavg::expand_sweep(spec);
        return execute_runs(spec, runs);
    } catch (const dynavg::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const dynavg::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    }
}
