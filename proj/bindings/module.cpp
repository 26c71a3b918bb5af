#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

#include "hdb/errors.hpp"
#include "hdb/pipeline.hpp"
#include "hdb/score.hpp"

namespace py = pybind11;

namespace {

hdb::FoodGroupSupply supply_from_dict(const std::map<std::string, double>& kcal) {
    hdb::FoodGroupSupply s;
    for (const auto& [label, value] : kcal) {
        auto group = hdb::group_from_label(label);
        if (!group || *group == hdb::FoodGroup::Excluded) {
            throw hdb::UnknownGroup(label);
        }
        s.kcal[hdb::group_index(*group)] = value;
    }
    return s;
}

std::map<std::string, double> ratios_to_dict(const hdb::GroupRatios& ratios) {
    std::map<std::string, double> out;
    for (hdb::FoodGroup g : hdb::kReportingGroups) {
        out[hdb::to_label(g)] = ratios[hdb::group_index(g)];
    }
    return out;
}

hdb::GroupRatios ratios_from_dict(const std::map<std::string, double>& ratios) {
    hdb::GroupRatios r{};
    for (const auto& [label, value] : ratios) {
        auto group = hdb::group_from_label(label);
        if (!group || *group == hdb::FoodGroup::Excluded) {
            throw hdb::UnknownGroup(label);
        }
        r[hdb::group_index(*group)] = value;
    }
    return r;
}

}  // namespace

PYBIND11_MODULE(_hdbkit, m) {
    m.doc() = "Healthy Diet Basket adequacy scoring and pipeline bindings";

    py::register_exception<hdb::Error>(m, "PipelineError");

    m.def(
        "hdbi",
        [](const std::map<std::string, double>& ratios) {
            return hdb::hdbi(ratios_from_dict(ratios));
        },
        py::arg("ratios"),
        "Adequacy index from per-group ratios (sugars, if present, is ignored). "
        "Missing groups count as ratio 0.");

    m.def(
        "adequacy_ratios",
        [](const std::map<std::string, double>& kcal) {
            return ratios_to_dict(hdb::adequacy_ratios(supply_from_dict(kcal)));
        },
        py::arg("kcal"),
        "Per-group adequacy ratios from per-group kcal/capita/day values.");

    m.def(
        "score_supply",
        [](const std::map<std::string, double>& kcal) {
            auto s = hdb::score(supply_from_dict(kcal));
            return py::make_tuple(ratios_to_dict(s.ratios), s.hdbi);
        },
        py::arg("kcal"), "Returns (ratios, hdbi) for per-group kcal/capita/day values.");

    m.def(
        "total_energy",
        [](const std::map<std::string, double>& kcal) {
            return hdb::total_energy(supply_from_dict(kcal));
        },
        py::arg("kcal"), "Six HDB groups plus sugars, in kcal/capita/day.");

    m.def("targets", [] {
        hdb::HdbTargets t;
        std::map<std::string, double> out;
        for (hdb::FoodGroup g : hdb::kReportingGroups) {
            out[hdb::to_label(g)] = t.target(g);
        }
        return out;
    });

    m.def("group_labels", [] {
        std::vector<std::string> out;
        for (hdb::FoodGroup g : hdb::kReportingGroups) out.push_back(hdb::to_label(g));
        return out;
    });

    m.def(
        "validate",
        [](const std::filesystem::path& config_path) {
            auto report = hdb::validate(hdb::load_config(config_path));
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : report.violations) out.emplace_back(v.field, v.message);
            return out;
        },
        py::arg("config_path"),
        "Validates a pipeline config; returns a list of (field, message) violations.");

    m.def(
        "run",
        [](const std::filesystem::path& config_path, const std::string& out_dir,
           const std::vector<std::string>& scenarios) {
            auto cfg = hdb::load_config(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (!scenarios.empty()) cfg.scenarios = scenarios;
            auto result = hdb::run(cfg);
            std::vector<std::string> out;
            for (const auto& p : result.outputs) out.push_back(p.string());
            return out;
        },
        py::arg("config_path"), py::arg("out_dir") = std::string(),
        py::arg("scenarios") = std::vector<std::string>(),
        "Runs the full pipeline; returns the written output paths.");

#ifdef HDBKIT_VERSION
    m.attr("__version__") = HDBKIT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
