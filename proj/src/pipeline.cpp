#include "hdb/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

namespace hdb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Wide ratio tables use this column order.
constexpr std::array<FoodGroup, kReportingGroupCount> kWideOrder = {
    FoodGroup::AnimalSourceFoods, FoodGroup::Fruits,   FoodGroup::LegumesNutsSeeds,
    FoodGroup::OilsFats,          FoodGroup::StarchyStaples,
    FoodGroup::Sugars,            FoodGroup::Vegetables,
};
constexpr const char* kWideColumns[] = {"asf",    "fruits", "lns",   "oils_fats",
                                        "starchy_staples", "sugars", "vegetables"};

std::ifstream open_input(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + p.string());
    return in;
}

std::string fnv1a_hex(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open for digest: " + p.string());
    std::uint64_t h = 1469598103934665603ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

fs::path resolve(const fs::path& base_dir, const std::string& value) {
    fs::path p(value);
    return p.is_absolute() ? p : base_dir / p;
}

struct IngestResult {
    std::vector<SupplyObservation> panel;
    PopulationSeries population;
    std::map<int, std::string> names;
    std::vector<ParseReport> reports;
    int max_year = 2020;
};

IngestResult ingest(const PipelineConfig& cfg) {
    IngestResult out;
    std::vector<SupplyObservation> old_obs, new_obs;
    std::vector<PopulationRecord> old_pop, new_pop;

    auto load = [&](const fs::path& path, SchemaVariant variant, Methodology method) {
        auto in = open_input(path);
        ParseReport report;
        report.source = path.string();
        auto records = drop_aggregates(parse_fbs_csv(in, variant, report));
        for (const auto& r : records) {
            if (!r.area_name.empty()) out.names[r.area_code] = r.area_name;
        }
        auto obs = to_observations(filter_energy_supply(records), method);
        auto pop = extract_population(records, method);
        auto& obs_dst = method == Methodology::Old ? old_obs : new_obs;
        auto& pop_dst = method == Methodology::Old ? old_pop : new_pop;
        obs_dst.insert(obs_dst.end(), obs.begin(), obs.end());
        pop_dst.insert(pop_dst.end(), pop.begin(), pop.end());
        out.reports.push_back(std::move(report));
    };
    for (const auto& p : cfg.fbsh_files) load(p, SchemaVariant::Fbsh, Methodology::Old);
    for (const auto& p : cfg.fbs_files) load(p, SchemaVariant::Fbs, Methodology::New);

    SpliceConfig scfg;
    scfg.splice_year = cfg.splice_year;
    if (!cfg.succession.empty()) {
        auto in = open_input(cfg.succession);
        scfg.succession = load_succession(in);
    }
    out.panel = splice_series(old_obs, new_obs, scfg);
    if (!cfg.population.empty()) {
        auto in = open_input(cfg.population);
        out.population = load_population(in);
    } else {
        out.population =
            population_from_records(splice_population(old_pop, new_pop, scfg));
    }
    out.max_year = kMinYear;
    for (const auto& o : out.panel) out.max_year = std::max(out.max_year, o.year);
    return out;
}

struct Computed {
    IngestResult data;
    CommodityMap map;
    RegionScheme scheme;
    std::vector<FoodGroupSupply> supplies;
    std::vector<HdbiScore> scores;
    std::vector<RegionSupply> region_supplies;
    std::vector<DroppedUnit> dropped_units;
    std::vector<Trajectory> trajectories;
    bool projections_ran = false;
};

CommodityMap load_map_file(const fs::path& p) {
    if (p.empty()) throw Error("no commodity map configured");
    auto in = open_input(p);
    return load_commodity_map(in);
}

RegionScheme load_scheme_file(const fs::path& p) {
    if (p.empty()) throw Error("no region scheme configured");
    auto in = open_input(p);
    return load_region_scheme(in);
}

DeltaTable load_all_deltas(const PipelineConfig& cfg) {
    DeltaTable merged;
    for (const auto& p : cfg.scenario_deltas) {
        auto in = open_input(p);
        merged.merge(load_deltas(in, cfg.impact_base_year));
    }
    return merged;
}

void compute_projections(const PipelineConfig& cfg, Computed& c) {
    if (cfg.scenario_deltas.empty() || !cfg.projections) return;
    if (cfg.impact_units.empty()) {
        throw Error("scenario deltas configured without an impact unit file");
    }
    auto units_in = open_input(cfg.impact_units);
    auto units = load_impact_units(units_in);
    DeltaTable deltas = load_all_deltas(cfg);
    if (deltas.has_items() && deltas.has_groups()) {
        throw Error("delta files mix item-level and group-level rows");
    }
    if (deltas.has_items()) {
        auto composition = unit_item_composition(c.data.panel, c.data.population,
                                                 cfg.impact_base_year, units);
        deltas = collapse_item_deltas(deltas, composition, c.map, cfg.impact_base_year);
    }
    if (!cfg.scenarios.empty()) {
        auto known = deltas.scenarios();
        for (const auto& s : cfg.scenarios) {
            if (std::find(known.begin(), known.end(), s) == known.end()) {
                throw Error("scenario '" + s + "' not present in the delta files");
            }
        }
    }
    ImpactBase base =
        build_impact_base(c.supplies, c.data.population, cfg.impact_base_year, units, c.scheme);
    c.dropped_units = base.dropped;
    c.trajectories = trajectory(base, deltas);
    if (!cfg.scenarios.empty()) {
        std::set<std::string> keep(cfg.scenarios.begin(), cfg.scenarios.end());
        std::erase_if(c.trajectories,
                      [&](const Trajectory& t) { return !keep.count(t.scenario); });
    }
    c.projections_ran = true;
}

// Collects written files so they can all be removed if a later stage fails.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory: " + dir_.string());
    }
    std::ofstream create(const std::string& name) {
        fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + p.string());
        written_.push_back(p);
        return out;
    }
    const fs::path& dir() const { return dir_; }
    const std::vector<fs::path>& written() const { return written_; }
    void discard_all() {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

std::string fixed3(double v) { return csv::format_fixed(v, 3); }

std::size_t write_panel(std::ostream& out, const Computed& c) {
    out << "country_id,item_code,year,kcal,source\n";
    for (const auto& o : c.data.panel) {
        csv::write_row(out, {std::to_string(o.country_id), std::to_string(o.item_code),
                             std::to_string(o.year), fixed3(o.kcal_per_capita_day),
                             to_label(o.source)});
    }
    return c.data.panel.size();
}

void write_wide_header(std::ostream& out, const std::string& prefix) {
    out << prefix;
    for (const char* col : kWideColumns) out << ',' << col;
    out << ",hdbi\n";
}

std::size_t write_country_scores(std::ostream& out, const Computed& c) {
    write_wide_header(out, "country_id,country_name,year");
    for (const auto& s : c.scores) {
        csv::Row row{std::to_string(s.country_id), {}, std::to_string(s.year)};
        auto name = c.data.names.find(s.country_id);
        if (name != c.data.names.end()) row[1] = name->second;
        for (FoodGroup g : kWideOrder) row.push_back(fixed3(s.ratios[group_index(g)]));
        row.push_back(fixed3(s.hdbi));
        csv::write_row(out, row);
    }
    return c.scores.size();
}

std::size_t write_region_supply(std::ostream& out, const Computed& c) {
    out << "region,year,group,kcal\n";
    std::size_t rows = 0;
    for (const auto& rs : c.region_supplies) {
        for (FoodGroup g : kReportingGroups) {
            csv::write_row(out, {rs.region, std::to_string(rs.year), to_label(g),
                                 fixed3(rs.kcal[group_index(g)])});
            ++rows;
        }
    }
    return rows;
}

std::size_t write_region_scores(std::ostream& out, const Computed& c) {
    write_wide_header(out, "region,year");
    for (const auto& rs : c.region_supplies) {
        FoodGroupSupply shim{0, rs.year, rs.kcal};
        GroupRatios ratios = adequacy_ratios(shim);
        csv::Row row{rs.region, std::to_string(rs.year)};
        for (FoodGroup g : kWideOrder) row.push_back(fixed3(ratios[group_index(g)]));
        row.push_back(fixed3(hdbi(ratios)));
        csv::write_row(out, row);
    }
    return c.region_supplies.size();
}

std::size_t write_plot_ratios(std::ostream& out, const Computed& c) {
    out << "region,year,group,ratio\n";
    std::size_t rows = 0;
    for (const auto& rs : c.region_supplies) {
        FoodGroupSupply shim{0, rs.year, rs.kcal};
        GroupRatios ratios = adequacy_ratios(shim);
        for (FoodGroup g : kReportingGroups) {
            csv::write_row(out, {rs.region, std::to_string(rs.year), to_label(g),
                                 fixed3(ratios[group_index(g)])});
            ++rows;
        }
    }
    return rows;
}

std::vector<std::string> decades_present(const Computed& c) {
    std::set<std::string> labels;
    for (const auto& s : c.scores) labels.insert(decade_label(s.year, c.data.max_year));
    return {labels.begin(), labels.end()};
}

std::size_t write_decade_hdbi(std::ostream& out, const Computed& c, CiUnit unit) {
    out << "region,decade,mean_hdbi,ci_low,ci_high,n\n";
    std::vector<DecadeSummary> all;
    for (const auto& decade : decades_present(c)) {
        auto rows = decade_mean_hdbi(c.scores, c.scheme, decade, unit, c.data.max_year);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    std::sort(all.begin(), all.end(), [](const DecadeSummary& a, const DecadeSummary& b) {
        return std::tie(a.region, a.decade) < std::tie(b.region, b.decade);
    });
    for (const auto& d : all) {
        csv::write_row(out, {d.region, d.decade, fixed3(d.mean_hdbi), fixed3(d.ci_low),
                             fixed3(d.ci_high), std::to_string(d.n)});
    }
    return all.size();
}

std::size_t write_decade_energy(std::ostream& out, const Computed& c) {
    out << "region,decade,mean_kcal,n_years\n";
    std::vector<DecadeEnergy> all;
    for (const auto& decade : decades_present(c)) {
        auto rows = decade_mean_energy(c.region_supplies, decade, c.data.max_year);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    std::sort(all.begin(), all.end(), [](const DecadeEnergy& a, const DecadeEnergy& b) {
        return std::tie(a.region, a.decade) < std::tie(b.region, b.decade);
    });
    for (const auto& d : all) {
        csv::write_row(out, {d.region, d.decade, fixed3(d.mean_kcal),
                             std::to_string(d.n_years)});
    }
    return all.size();
}

std::size_t write_projection_ratios(std::ostream& out, const Computed& c) {
    out << "scenario,region,year,group,ratio\n";
    std::size_t rows = 0;
    for (const auto& t : c.trajectories) {
        for (FoodGroup g : kReportingGroups) {
            csv::write_row(out, {t.scenario, t.region, std::to_string(t.year), to_label(g),
                                 fixed3(t.ratios[group_index(g)])});
            ++rows;
        }
    }
    return rows;
}

std::size_t write_projection_hdbi(std::ostream& out, const Computed& c) {
    out << "scenario,region,year,hdbi\n";
    for (const auto& t : c.trajectories) {
        csv::write_row(out, {t.scenario, t.region, std::to_string(t.year), fixed3(t.hdbi)});
    }
    return c.trajectories.size();
}

json config_echo(const PipelineConfig& cfg) {
    json j;
    auto paths = [](const std::vector<fs::path>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(p.string());
        return a;
    };
    j["fbsh"] = paths(cfg.fbsh_files);
    j["fbs"] = paths(cfg.fbs_files);
    j["commodity_map"] = cfg.commodity_map.string();
    j["region_scheme"] = cfg.region_scheme.string();
    j["population"] = cfg.population.string();
    j["succession"] = cfg.succession.string();
    j["impact_units"] = cfg.impact_units.string();
    j["scenario_deltas"] = paths(cfg.scenario_deltas);
    j["splice_year"] = cfg.splice_year;
    j["impact_base_year"] = cfg.impact_base_year;
    j["projections"] = cfg.projections;
    j["ci_unit"] =
        cfg.ci_unit == CiUnit::CountryYear ? "country_year" : "country_decade_mean";
    j["scenarios"] = cfg.scenarios;
    // out_dir deliberately omitted: the manifest must not depend on where it lives
    return j;
}

}  // namespace

PipelineConfig load_config(const fs::path& file) {
    auto in = open_input(file);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("bad config JSON in " + file.string() + ": " + e.what());
    }
    const fs::path base = fs::absolute(file).parent_path();
    PipelineConfig cfg;
    const std::set<std::string> known = {
        "fbsh",         "fbs",        "commodity_map", "region_scheme", "population",
        "succession",   "impact_units", "scenario_deltas", "splice_year",
        "impact_base_year", "projections", "ci_unit",   "scenarios",     "out_dir"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw Error("unknown config key: '" + key + "'");
    }
    auto path_list = [&](const char* key) {
        std::vector<fs::path> out;
        if (!j.contains(key)) return out;
        const json& v = j.at(key);
        if (v.is_string()) {
            out.push_back(resolve(base, v.get<std::string>()));
        } else if (v.is_array()) {
            for (const auto& e : v) out.push_back(resolve(base, e.get<std::string>()));
        } else {
            throw Error(std::string("config key '") + key + "' must be a path or list");
        }
        return out;
    };
    auto single_path = [&](const char* key) -> fs::path {
        if (!j.contains(key) || j.at(key).is_null()) return {};
        return resolve(base, j.at(key).get<std::string>());
    };
    try {
        cfg.fbsh_files = path_list("fbsh");
        cfg.fbs_files = path_list("fbs");
        cfg.commodity_map = single_path("commodity_map");
        cfg.region_scheme = single_path("region_scheme");
        cfg.population = single_path("population");
        cfg.succession = single_path("succession");
        cfg.impact_units = single_path("impact_units");
        cfg.scenario_deltas = path_list("scenario_deltas");
        if (j.contains("splice_year")) cfg.splice_year = j.at("splice_year").get<int>();
        if (j.contains("impact_base_year")) {
            cfg.impact_base_year = j.at("impact_base_year").get<int>();
        }
        if (j.contains("projections")) cfg.projections = j.at("projections").get<bool>();
        if (j.contains("ci_unit")) {
            const std::string u = j.at("ci_unit").get<std::string>();
            if (u == "country_year") {
                cfg.ci_unit = CiUnit::CountryYear;
            } else if (u == "country_decade_mean") {
                cfg.ci_unit = CiUnit::CountryDecadeMean;
            } else {
                throw Error("bad ci_unit: '" + u + "'");
            }
        }
        if (j.contains("scenarios")) {
            cfg.scenarios = j.at("scenarios").get<std::vector<std::string>>();
        }
        if (j.contains("out_dir")) cfg.out_dir = resolve(base, j.at("out_dir").get<std::string>());
    } catch (const json::exception& e) {
        throw Error("bad config value in " + file.string() + ": " + e.what());
    }
    return cfg;
}

ValidationReport validate(const PipelineConfig& cfg) {
    ValidationReport report;
    auto violation = [&](const std::string& field, const std::string& message) {
        report.violations.push_back({field, message});
    };

    if (cfg.fbsh_files.empty() && cfg.fbs_files.empty()) {
        violation("fbsh/fbs", "no input files configured");
    }
    for (const auto& p : cfg.fbsh_files) {
        if (!fs::exists(p)) violation("fbsh", "missing file: " + p.string());
    }
    for (const auto& p : cfg.fbs_files) {
        if (!fs::exists(p)) violation("fbs", "missing file: " + p.string());
    }
    if (cfg.commodity_map.empty()) {
        violation("commodity_map", "no commodity map configured");
    } else if (!fs::exists(cfg.commodity_map)) {
        violation("commodity_map", "missing file: " + cfg.commodity_map.string());
    }
    if (cfg.region_scheme.empty()) {
        violation("region_scheme", "no region scheme configured");
    } else if (!fs::exists(cfg.region_scheme)) {
        violation("region_scheme", "missing file: " + cfg.region_scheme.string());
    }
    for (const fs::path& p : {cfg.population, cfg.succession, cfg.impact_units}) {
        if (!p.empty() && !fs::exists(p)) {
            violation("paths", "missing file: " + p.string());
        }
    }
    for (const auto& p : cfg.scenario_deltas) {
        if (!fs::exists(p)) violation("scenario_deltas", "missing file: " + p.string());
    }
    if (!cfg.out_dir.empty() && fs::exists(cfg.out_dir) && !fs::is_directory(cfg.out_dir)) {
        violation("out_dir", "not a directory: " + cfg.out_dir.string());
    }
    if (!report.ok()) return report;  // structural gaps block the content checks

    IngestResult data;
    try {
        data = ingest(cfg);
    } catch (const std::exception& e) {
        violation("ingest", e.what());
        return report;
    }

    CommodityMap map;
    bool have_map = false;
    try {
        map = load_map_file(cfg.commodity_map);
        have_map = true;
    } catch (const std::exception& e) {
        violation("commodity_map", e.what());
    }
    if (have_map) {
        std::set<int> items;
        for (const auto& o : data.panel) items.insert(o.item_code);
        for (int item : items) {
            if (!map.contains(item)) {
                violation("commodity_map", "unmapped item code " + std::to_string(item));
            }
        }
    }

    RegionScheme scheme;
    bool have_scheme = false;
    try {
        scheme = load_scheme_file(cfg.region_scheme);
        have_scheme = true;
    } catch (const std::exception& e) {
        violation("region_scheme", e.what());
    }
    std::set<std::pair<int, int>> country_years;
    std::set<int> countries;
    for (const auto& o : data.panel) {
        countries.insert(o.country_id);
        country_years.insert({o.country_id, o.year});
    }
    if (have_scheme) {
        for (int country : countries) {
            if (!scheme.contains(country)) {
                violation("region_scheme", "unassigned country " + std::to_string(country));
            }
        }
    }
    for (const auto& [country, year] : country_years) {
        if (!data.population.has(country, year)) {
            violation("population", "no population for country " + std::to_string(country) +
                                        " in year " + std::to_string(year));
        }
    }

    if (!cfg.scenario_deltas.empty() && cfg.projections) {
        if (cfg.impact_units.empty()) {
            violation("impact_units", "scenario deltas configured without a unit file");
        } else {
            try {
                auto in = open_input(cfg.impact_units);
                auto units = load_impact_units(in);
                if (have_scheme) {
                    // members absent from the panel are dropped with a report
                    // at run time, so only panel members need a region here
                    for (const auto& u : units) {
                        if (u.excluded_from_figures) continue;
                        for (int m : u.members) {
                            if (countries.count(m) && !scheme.contains(m)) {
                                violation("impact_units",
                                          "unit '" + u.unit_id + "' member " +
                                              std::to_string(m) + " not in region scheme");
                            }
                        }
                    }
                }
            } catch (const std::exception& e) {
                violation("impact_units", e.what());
            }
        }
        try {
            DeltaTable deltas = load_all_deltas(cfg);
            if (deltas.has_items() && deltas.has_groups()) {
                violation("scenario_deltas", "delta files mix item-level and group-level rows");
            }
            auto known = deltas.scenarios();
            for (const auto& s : cfg.scenarios) {
                if (std::find(known.begin(), known.end(), s) == known.end()) {
                    violation("scenarios", "scenario '" + s + "' not in the delta files");
                }
            }
        } catch (const std::exception& e) {
            violation("scenario_deltas", e.what());
        }
    }
    return report;
}

RunResult run(const PipelineConfig& cfg, Stage stage) {
    Computed c;
    c.data = ingest(cfg);

    const bool want_score = stage != Stage::Ingest;
    const bool want_aggregate =
        stage == Stage::Aggregate || stage == Stage::Project || stage == Stage::All;
    const bool want_project = stage == Stage::Project || stage == Stage::All;

    if (want_score) {
        c.map = load_map_file(cfg.commodity_map);
        c.supplies = group_supply(c.data.panel, c.map);
        c.scores.reserve(c.supplies.size());
        for (const auto& s : c.supplies) c.scores.push_back(score(s));
    }
    if (want_aggregate) {
        c.scheme = load_scheme_file(cfg.region_scheme);
        c.region_supplies = regional_supply(c.supplies, c.data.population, c.scheme);
    }
    if (want_project) {
        compute_projections(cfg, c);
    }

    OutputSet outputs(cfg.out_dir);
    std::vector<std::pair<std::string, std::size_t>> output_rows;
    auto emit = [&](const std::string& name, auto writer) {
        auto out = outputs.create(name);
        output_rows.emplace_back(name, writer(out));
    };
    try {
        if (stage == Stage::Ingest || stage == Stage::All) {
            emit("panel.csv", [&](std::ostream& o) { return write_panel(o, c); });
        }
        if (stage == Stage::Score || stage == Stage::All) {
            emit("scores_country.csv",
                 [&](std::ostream& o) { return write_country_scores(o, c); });
        }
        if (stage == Stage::Aggregate || stage == Stage::All) {
            emit("supply_region.csv",
                 [&](std::ostream& o) { return write_region_supply(o, c); });
            emit("scores_region.csv",
                 [&](std::ostream& o) { return write_region_scores(o, c); });
            emit("decade_hdbi.csv",
                 [&](std::ostream& o) { return write_decade_hdbi(o, c, cfg.ci_unit); });
            emit("decade_energy.csv",
                 [&](std::ostream& o) { return write_decade_energy(o, c); });
            emit("plotdata_group_ratios.csv",
                 [&](std::ostream& o) { return write_plot_ratios(o, c); });
        }
        if ((stage == Stage::Project || stage == Stage::All) && c.projections_ran) {
            emit("projection_ratios.csv",
                 [&](std::ostream& o) { return write_projection_ratios(o, c); });
            emit("projection_hdbi.csv",
                 [&](std::ostream& o) { return write_projection_hdbi(o, c); });
        }
        if (stage == Stage::All) {
            json manifest;
            manifest["config"] = config_echo(cfg);
            json inputs = json::array();
            auto add_input = [&](const std::string& role, const fs::path& p) {
                if (p.empty()) return;
                json entry;
                entry["role"] = role;
                entry["path"] = p.string();
                entry["digest"] = fnv1a_hex(p);
                inputs.push_back(entry);
            };
            for (const auto& p : cfg.fbsh_files) add_input("fbsh", p);
            for (const auto& p : cfg.fbs_files) add_input("fbs", p);
            add_input("commodity_map", cfg.commodity_map);
            add_input("region_scheme", cfg.region_scheme);
            add_input("population", cfg.population);
            add_input("succession", cfg.succession);
            add_input("impact_units", cfg.impact_units);
            for (const auto& p : cfg.scenario_deltas) add_input("scenario_deltas", p);
            manifest["inputs"] = inputs;
            json reports = json::array();
            for (const auto& r : c.data.reports) {
                json entry;
                entry["source"] = r.source;
                entry["rows_read"] = r.rows_read;
                entry["records"] = r.records;
                std::size_t bad_numeric = 0, bad_year = 0, negative = 0;
                for (const auto& issue : r.issues) {
                    switch (issue.kind) {
                        case ParseIssue::Kind::BadNumeric: ++bad_numeric; break;
                        case ParseIssue::Kind::BadYear: ++bad_year; break;
                        case ParseIssue::Kind::NegativeEnergy: ++negative; break;
                    }
                }
                entry["issues"] = {{"bad_numeric", bad_numeric},
                                   {"bad_year", bad_year},
                                   {"negative_energy", negative}};
                reports.push_back(entry);
            }
            manifest["parse_reports"] = reports;
            json dropped = json::array();
            for (const auto& d : c.dropped_units) {
                dropped.push_back({{"unit", d.unit_id},
                                   {"reason", d.reason},
                                   {"missing_members", d.missing_members}});
            }
            manifest["dropped_units"] = dropped;
            json outs = json::array();
            for (const auto& [name, rows] : output_rows) {
                outs.push_back({{"file", name}, {"rows", rows}});
            }
            manifest["outputs"] = outs;
            auto out = outputs.create("manifest.json");
            out << manifest.dump(2) << '\n';
        }
    } catch (...) {
        outputs.discard_all();
        throw;
    }
    return RunResult{outputs.written()};
}

}  // namespace hdb
