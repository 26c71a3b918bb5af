#include "hdb/project.hpp"

#include <algorithm>
#include <istream>
#include <set>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

namespace hdb {

namespace {

int to_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(std::string("bad ") + what + ": '" + s + "'");
    }
}

}  // namespace

std::vector<ImpactUnit> load_impact_units(std::istream& in) {
    auto rows = csv::read_all(in);
    if (rows.empty()) throw Error("empty unit membership file");
    csv::Header header(rows.front());
    const std::size_t col_unit = header.require("unit_id");
    const std::size_t col_member = header.require("member_country_id");
    const auto col_excluded = header.find("excluded_flag");

    std::map<std::string, ImpactUnit> units;
    std::map<int, std::string> owner;  // a country belongs to at most one unit
    std::vector<std::string> order;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || row[0].empty()) continue;
        const std::string& id = row.at(col_unit);
        auto [it, inserted] = units.try_emplace(id);
        if (inserted) {
            it->second.unit_id = id;
            order.push_back(id);
        }
        const int member = to_int(row.at(col_member), "member_country_id");
        if (member != 0) {
            auto [own, fresh] = owner.try_emplace(member, id);
            if (!fresh && own->second != id) {
                throw Error("country " + std::to_string(member) + " belongs to two units: '" +
                            own->second + "' and '" + id + "'");
            }
            it->second.members.push_back(member);
        }
        if (col_excluded && *col_excluded < row.size()) {
            const std::string& flag = row[*col_excluded];
            if (flag == "1" || flag == "true" || flag == "yes") {
                it->second.excluded_from_figures = true;
            }
        }
    }
    std::vector<ImpactUnit> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        ImpactUnit& u = units[id];
        if (u.members.empty() && !u.excluded_from_figures) {
            throw Error("unit '" + id + "' has no resolvable members and is not excluded");
        }
        std::sort(u.members.begin(), u.members.end());
        out.push_back(std::move(u));
    }
    return out;
}

void DeltaTable::add_group(const std::string& scenario, const std::string& unit_id,
                           FoodGroup group, int year, double multiplier) {
    if (!(multiplier > 0.0)) {
        throw Error("non-positive multiplier for scenario '" + scenario + "', unit '" + unit_id +
                    "', group " + to_label(group) + ", year " + std::to_string(year));
    }
    groups_[{scenario, unit_id, static_cast<int>(group), year}] = multiplier;
}

void DeltaTable::add_item(const std::string& scenario, const std::string& unit_id, int item_code,
                          int year, double multiplier) {
    if (!(multiplier > 0.0)) {
        throw Error("non-positive multiplier for scenario '" + scenario + "', unit '" + unit_id +
                    "', item " + std::to_string(item_code) + ", year " + std::to_string(year));
    }
    items_[{scenario, unit_id, item_code, year}] = multiplier;
}

double DeltaTable::multiplier(const std::string& scenario, const std::string& unit_id,
                              FoodGroup group, int year) const {
    auto it = groups_.find({scenario, unit_id, static_cast<int>(group), year});
    if (it == groups_.end()) throw MissingDelta(scenario, unit_id, to_label(group), year);
    return it->second;
}

std::optional<double> DeltaTable::item_multiplier(const std::string& scenario,
                                                  const std::string& unit_id, int item_code,
                                                  int year) const {
    auto it = items_.find({scenario, unit_id, item_code, year});
    if (it == items_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> DeltaTable::scenarios() const {
    std::set<std::string> s;
    for (const auto& [key, _] : groups_) s.insert(std::get<0>(key));
    for (const auto& [key, _] : items_) s.insert(std::get<0>(key));
    return {s.begin(), s.end()};
}

std::vector<int> DeltaTable::years(const std::string& scenario) const {
    std::set<int> s;
    for (const auto& [key, _] : groups_) {
        if (std::get<0>(key) == scenario) s.insert(std::get<3>(key));
    }
    for (const auto& [key, _] : items_) {
        if (std::get<0>(key) == scenario) s.insert(std::get<3>(key));
    }
    return {s.begin(), s.end()};
}

void DeltaTable::check_base_year(int base_year) const {
    auto check = [&](const auto& table, const char* kind) {
        std::set<std::tuple<std::string, std::string, int>> series;
        for (const auto& [key, _] : table) {
            series.insert({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
        }
        for (const auto& [scenario, unit, which] : series) {
            auto it = table.find({scenario, unit, which, base_year});
            if (it == table.end()) {
                throw Error("scenario '" + scenario + "', unit '" + unit + "', " + kind + " " +
                            std::to_string(which) + ": no base-year (" +
                            std::to_string(base_year) + ") multiplier");
            }
            if (it->second != 1.0) {
                throw Error("scenario '" + scenario + "', unit '" + unit + "', " + kind + " " +
                            std::to_string(which) + ": base-year multiplier must be 1, got " +
                            std::to_string(it->second));
            }
        }
    };
    check(groups_, "group");
    check(items_, "item");
}

void DeltaTable::merge(const DeltaTable& other) {
    for (const auto& [key, value] : other.groups_) groups_[key] = value;
    for (const auto& [key, value] : other.items_) items_[key] = value;
}

DeltaTable load_deltas(std::istream& in, int base_year) {
    auto rows = csv::read_all(in);
    if (rows.empty()) throw Error("empty delta file");
    csv::Header header(rows.front());
    const std::size_t col_scenario = header.require("scenario");
    const std::size_t col_unit = header.require("unit");
    const std::size_t col_group = header.require("group");
    const std::size_t col_year = header.require("year");
    const std::size_t col_mult = header.require("multiplier");

    DeltaTable table;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || row[0].empty()) continue;
        const std::string& scenario = row.at(col_scenario);
        const std::string& unit = row.at(col_unit);
        const std::string& group_cell = row.at(col_group);
        const int year = to_int(row.at(col_year), "year");
        double mult = 0.0;
        try {
            mult = std::stod(row.at(col_mult));
        } catch (const std::exception&) {
            throw Error("bad multiplier in delta row " + std::to_string(i + 1));
        }
        if (auto group = group_from_label(group_cell)) {
            table.add_group(scenario, unit, *group, year, mult);
        } else if (!group_cell.empty() &&
                   group_cell.find_first_not_of("0123456789") == std::string::npos) {
            table.add_item(scenario, unit, std::stoi(group_cell), year, mult);
        } else {
            throw UnknownGroup(group_cell);
        }
    }
    table.check_base_year(base_year);
    return table;
}

UnitItemKcal unit_item_composition(const std::vector<SupplyObservation>& base_observations,
                                   const PopulationSeries& pop, int base_year,
                                   const std::vector<ImpactUnit>& units) {
    std::map<int, std::map<int, double>> by_country;  // country -> item -> kcal
    for (const auto& o : base_observations) {
        if (o.year != base_year) continue;
        by_country[o.country_id][o.item_code] = o.kcal_per_capita_day;
    }
    UnitItemKcal out;
    for (const auto& u : units) {
        std::map<int, double> weighted;
        double pop_sum = 0.0;
        bool complete = true;
        for (int member : u.members) {
            auto it = by_country.find(member);
            if (it == by_country.end() || !pop.has(member, base_year)) {
                complete = false;
                break;
            }
            const double w = pop.at(member, base_year);
            pop_sum += w;
            for (const auto& [item, kcal] : it->second) weighted[item] += w * kcal;
        }
        if (!complete || u.members.empty()) continue;
        auto& slot = out[u.unit_id];
        for (const auto& [item, wk] : weighted) slot[item] = wk / pop_sum;
    }
    return out;
}

DeltaTable collapse_item_deltas(const DeltaTable& item_deltas, const UnitItemKcal& composition,
                                const CommodityMap& map, int base_year) {
    DeltaTable out;
    for (const auto& scenario : item_deltas.scenarios()) {
        for (int year : item_deltas.years(scenario)) {
            for (const auto& [unit_id, items] : composition) {
                GroupKcal group_kcal{};
                GroupKcal group_weighted{};
                for (const auto& [item, kcal] : items) {
                    const FoodGroup g = map.classify(item);
                    if (g == FoodGroup::Excluded || kcal <= 0.0) continue;
                    auto mult = item_deltas.item_multiplier(scenario, unit_id, item, year);
                    if (!mult) {
                        throw MissingDelta(scenario, unit_id, std::to_string(item), year);
                    }
                    group_kcal[group_index(g)] += kcal;
                    group_weighted[group_index(g)] += kcal * *mult;
                }
                for (FoodGroup g : kReportingGroups) {
                    const std::size_t gi = group_index(g);
                    const double mult =
                        group_kcal[gi] > 0.0 ? group_weighted[gi] / group_kcal[gi] : 1.0;
                    out.add_group(scenario, unit_id, g, year, mult);
                }
            }
        }
    }
    out.check_base_year(base_year);
    return out;
}

ImpactBase build_impact_base(const std::vector<FoodGroupSupply>& supplies,
                             const PopulationSeries& pop, int base_year,
                             const std::vector<ImpactUnit>& units, const RegionScheme& scheme) {
    std::map<int, const FoodGroupSupply*> base_supply;
    for (const auto& s : supplies) {
        if (s.year == base_year) base_supply[s.country_id] = &s;
    }

    ImpactBase out;
    out.base_year = base_year;
    for (const auto& u : units) {
        if (u.excluded_from_figures) {
            out.dropped.push_back({u.unit_id, "excluded", {}});
            continue;
        }
        std::vector<int> missing;
        for (int member : u.members) {
            if (!base_supply.count(member) || !pop.has(member, base_year)) {
                missing.push_back(member);
            }
        }
        if (!missing.empty()) {
            out.dropped.push_back({u.unit_id, "missing member", std::move(missing)});
            continue;
        }
        UnitBase base;
        base.unit_id = u.unit_id;
        for (int member : u.members) {  // members are sorted at load
            const std::string& region = scheme.region_of(member);
            if (base.region.empty()) {
                base.region = region;
            } else if (base.region != region) {
                throw Error("unit '" + u.unit_id + "' spans regions '" + base.region +
                            "' and '" + region + "'");
            }
            const double w = pop.at(member, base_year);
            for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
                base.kcal[g] += w * base_supply[member]->kcal[g];
            }
            base.population += w;
        }
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) base.kcal[g] /= base.population;
        out.units.push_back(std::move(base));
    }
    std::sort(out.units.begin(), out.units.end(),
              [](const UnitBase& a, const UnitBase& b) { return a.unit_id < b.unit_id; });
    return out;
}

GroupKcal apply_deltas(const UnitBase& base, const DeltaTable& deltas,
                       const std::string& scenario, int year) {
    GroupKcal out{};
    for (FoodGroup g : kReportingGroups) {
        const std::size_t gi = group_index(g);
        if (base.kcal[gi] == 0.0) continue;
        out[gi] = base.kcal[gi] * deltas.multiplier(scenario, base.unit_id, g, year);
    }
    return out;
}

namespace {

struct RegionAccumulator {
    GroupKcal weighted_sum{};
    double population = 0.0;
};

std::vector<Trajectory> score_regions(const std::map<std::string, RegionAccumulator>& regions,
                                      const std::string& scenario, int year,
                                      const HdbTargets& targets) {
    std::vector<Trajectory> out;
    RegionAccumulator world;
    for (const auto& [region, acc] : regions) {
        FoodGroupSupply supply;
        supply.year = year;
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
            supply.kcal[g] = acc.weighted_sum[g] / acc.population;
            world.weighted_sum[g] += acc.weighted_sum[g];
        }
        world.population += acc.population;
        Trajectory t;
        t.scenario = scenario;
        t.region = region;
        t.year = year;
        t.ratios = adequacy_ratios(supply, targets);
        t.hdbi = hdbi(t.ratios);
        out.push_back(std::move(t));
    }
    FoodGroupSupply supply;
    supply.year = year;
    for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
        supply.kcal[g] = world.weighted_sum[g] / world.population;
    }
    Trajectory t;
    t.scenario = scenario;
    t.region = kWorldRegion;
    t.year = year;
    t.ratios = adequacy_ratios(supply, targets);
    t.hdbi = hdbi(t.ratios);
    out.push_back(std::move(t));
    return out;
}

}  // namespace

std::vector<Trajectory> trajectory(const ImpactBase& base, const DeltaTable& deltas,
                                   const HdbTargets& targets) {
    std::vector<Trajectory> out;
    for (const auto& scenario : deltas.scenarios()) {
        for (int year : deltas.years(scenario)) {
            std::map<std::string, RegionAccumulator> regions;
            for (const auto& unit : base.units) {  // sorted by unit_id
                const GroupKcal projected = apply_deltas(unit, deltas, scenario, year);
                auto& acc = regions[unit.region];
                for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
                    acc.weighted_sum[g] += unit.population * projected[g];
                }
                acc.population += unit.population;
            }
            auto rows = score_regions(regions, scenario, year, targets);
            out.insert(out.end(), rows.begin(), rows.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) {
        return std::tie(a.scenario, a.region, a.year) < std::tie(b.scenario, b.region, b.year);
    });
    return out;
}

std::vector<Trajectory> aggregate_base(const ImpactBase& base, const HdbTargets& targets) {
    std::map<std::string, RegionAccumulator> regions;
    for (const auto& unit : base.units) {
        auto& acc = regions[unit.region];
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
            acc.weighted_sum[g] += unit.population * unit.kcal[g];
        }
        acc.population += unit.population;
    }
    return score_regions(regions, "", base.base_year, targets);
}

}  // namespace hdb
