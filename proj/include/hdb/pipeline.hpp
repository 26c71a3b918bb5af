#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hdb/project.hpp"

namespace hdb {

struct PipelineConfig {
    std::vector<std::filesystem::path> fbsh_files;  // old-methodology exports
    std::vector<std::filesystem::path> fbs_files;   // new-methodology exports
    std::filesystem::path commodity_map;
    std::filesystem::path region_scheme;
    std::filesystem::path population;  // optional override; default is the
                                       // population element of the FBS files
    std::filesystem::path succession;  // optional
    std::filesystem::path impact_units;
    std::vector<std::filesystem::path> scenario_deltas;
    int splice_year = 2010;
    int impact_base_year = 2010;
    bool projections = true;  // skipped anyway when no delta files are given
    CiUnit ci_unit = CiUnit::CountryYear;
    std::vector<std::string> scenarios;  // empty = every scenario in the deltas
    std::filesystem::path out_dir = "out";
};

// Reads a JSON config. Relative paths resolve against the config file's
// directory; unknown keys are rejected.
PipelineConfig load_config(const std::filesystem::path& file);

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks that every referenced file is readable and well formed, that the
// commodity map covers every item code in the panel, that the region scheme
// covers every country, and that populations exist for every weighted
// country-year. Never writes anything.
ValidationReport validate(const PipelineConfig& cfg);

enum class Stage { Ingest, Score, Aggregate, Project, All };

struct RunResult {
    std::vector<std::filesystem::path> outputs;
};

// Executes the pipeline through `stage` and writes that stage's artifacts
// (Stage::All writes everything plus the run manifest). Outputs are
// deterministic: fixed sort orders and fixed 3-decimal formatting. On error
// every file written so far is removed.
RunResult run(const PipelineConfig& cfg, Stage stage = Stage::All);

}  // namespace hdb
