#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdb/errors.hpp"
#include "hdb/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDataError = 2;
constexpr int kExitIoError = 3;

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string map_path;
    int splice_year = -1;
    std::vector<std::string> scenarios;
    std::string format = "csv";
};

hdb::PipelineConfig make_config(const CliOptions& opt) {
    hdb::PipelineConfig cfg = hdb::load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (!opt.map_path.empty()) cfg.commodity_map = opt.map_path;
    if (opt.splice_year > 0) cfg.splice_year = opt.splice_year;
    if (!opt.scenarios.empty()) cfg.scenarios = opt.scenarios;
    return cfg;
}

int print_validation(const hdb::ValidationReport& report) {
    if (report.ok()) {
        std::cout << "ok: configuration and inputs are valid\n";
        return kExitOk;
    }
    for (const auto& v : report.violations) {
        std::cout << "violation: " << v.field << ": " << v.message << "\n";
    }
    std::cout << report.violations.size() << " violation(s)\n";
    return kExitValidation;
}

int run_stage(const CliOptions& opt, hdb::Stage stage) {
    hdb::PipelineConfig cfg = make_config(opt);
    auto report = hdb::validate(cfg);
    if (!report.ok()) return print_validation(report);
    auto result = hdb::run(cfg, stage);
    for (const auto& p : result.outputs) std::cout << "wrote " << p.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Healthy Diet Basket pipeline: food balance sheets in, adequacy scores out"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", opt.config_path, "pipeline configuration (JSON)")
            ->required();
        if (with_out) cmd->add_option("--out", opt.out_dir, "output directory override");
        cmd->add_option("--map", opt.map_path, "commodity map override");
        cmd->add_option("--splice-year", opt.splice_year,
                        "first year taken from the new-methodology series");
        cmd->add_option("--scenario", opt.scenarios,
                        "restrict projections to these scenario ids");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv"}));
    };

    auto* validate_cmd = app.add_subcommand("validate", "check config, inputs and coverage");
    add_common(validate_cmd, false);
    auto* ingest_cmd = app.add_subcommand("ingest", "parse, filter and splice the panel");
    add_common(ingest_cmd, true);
    auto* score_cmd = app.add_subcommand("score", "compute country-year adequacy scores");
    add_common(score_cmd, true);
    auto* aggregate_cmd =
        app.add_subcommand("aggregate", "regional supplies, scores and decade summaries");
    add_common(aggregate_cmd, true);
    auto* project_cmd = app.add_subcommand("project", "apply scenario deltas through 2050");
    add_common(project_cmd, true);
    auto* run_cmd = app.add_subcommand("run", "full pipeline with manifest");
    add_common(run_cmd, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            return print_validation(hdb::validate(make_config(opt)));
        }
        if (ingest_cmd->parsed()) return run_stage(opt, hdb::Stage::Ingest);
        if (score_cmd->parsed()) return run_stage(opt, hdb::Stage::Score);
        if (aggregate_cmd->parsed()) return run_stage(opt, hdb::Stage::Aggregate);
        if (project_cmd->parsed()) return run_stage(opt, hdb::Stage::Project);
        if (run_cmd->parsed()) return run_stage(opt, hdb::Stage::All);
    } catch (const hdb::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const hdb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
