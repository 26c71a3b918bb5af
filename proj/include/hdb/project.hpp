#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdb/aggregate.hpp"

namespace hdb {

// One modeling unit: a country or a published country aggregate.
struct ImpactUnit {
    std::string unit_id;
    std::vector<int> members;  // FAO country ids
    bool excluded_from_figures = false;
};

// Reads `unit_id,member_country_id,excluded_flag[,member_name]`, one row per
// member. Rows with member id 0 stand for territories absent from the
// supply panel; they keep the unit listed while guaranteeing it is dropped.
std::vector<ImpactUnit> load_impact_units(std::istream& in);

// Multiplicative changes relative to the base year, per scenario, unit and
// food group (or commodity item before collapsing).
class DeltaTable {
public:
    void add_group(const std::string& scenario, const std::string& unit_id, FoodGroup group,
                   int year, double multiplier);
    void add_item(const std::string& scenario, const std::string& unit_id, int item_code,
                  int year, double multiplier);

    double multiplier(const std::string& scenario, const std::string& unit_id, FoodGroup group,
                      int year) const;  // throws MissingDelta
    std::optional<double> item_multiplier(const std::string& scenario,
                                          const std::string& unit_id, int item_code,
                                          int year) const;

    bool has_items() const { return !items_.empty(); }
    bool has_groups() const { return !groups_.empty(); }
    std::vector<std::string> scenarios() const;
    std::vector<int> years(const std::string& scenario) const;

    // Every (scenario, unit, group/item) series must carry multiplier 1 at
    // the base year. Throws Error on violation.
    void check_base_year(int base_year) const;

    // Folds another table in; later entries win on key collisions.
    void merge(const DeltaTable& other);

private:
    std::map<std::tuple<std::string, std::string, int, int>, double> groups_;
    std::map<std::tuple<std::string, std::string, int, int>, double> items_;
};

// Reads `scenario,unit,group,year,multiplier`; the group column holds either
// a food-group label or a numeric commodity item code. Non-positive
// multipliers are rejected, and the base-year invariant is enforced.
DeltaTable load_deltas(std::istream& in, int base_year = 2010);

// unit -> item -> base-year per-capita kcal, population-weighted over the
// unit's members.
using UnitItemKcal = std::map<std::string, std::map<int, double>>;

UnitItemKcal unit_item_composition(const std::vector<SupplyObservation>& base_observations,
                                   const PopulationSeries& pop, int base_year,
                                   const std::vector<ImpactUnit>& units);

// Collapses per-commodity multipliers to per-group multipliers, weighting by
// each item's share of the unit's base-year kcal in that group.
DeltaTable collapse_item_deltas(const DeltaTable& item_deltas, const UnitItemKcal& composition,
                                const CommodityMap& map, int base_year = 2010);

struct UnitBase {
    std::string unit_id;
    std::string region;
    GroupKcal kcal{};  // per-capita at the base year
    double population = 0.0;
};

struct DroppedUnit {
    std::string unit_id;
    std::string reason;  // "excluded" or "missing member"
    std::vector<int> missing_members;
};

struct ImpactBase {
    int base_year = 2010;
    std::vector<UnitBase> units;
    std::vector<DroppedUnit> dropped;
};

// Builds base-year supply per unit (population-weighted over members).
// Units flagged excluded, or with any member lacking base-year supply or
// population, are dropped and reported, never silently zeroed.
ImpactBase build_impact_base(const std::vector<FoodGroupSupply>& supplies,
                             const PopulationSeries& pop, int base_year,
                             const std::vector<ImpactUnit>& units, const RegionScheme& scheme);

// kcal(group, year) = base kcal(group) * multiplier(scenario, unit, group, year).
// Groups with zero base kcal stay zero and need no multiplier.
GroupKcal apply_deltas(const UnitBase& base, const DeltaTable& deltas,
                       const std::string& scenario, int year);

struct Trajectory {
    std::string scenario;
    std::string region;
    int year = 0;
    GroupRatios ratios{};
    double hdbi = 0.0;
};

// Projects every unit for every scenario-year in the table, aggregates to
// regions and World with base-year populations held fixed, and scores the
// result. Rows are sorted by (scenario, region, year).
std::vector<Trajectory> trajectory(const ImpactBase& base, const DeltaTable& deltas,
                                   const HdbTargets& targets = {});

// The unprojected base aggregation (what every scenario must equal at the
// base year). Scenario field is left empty.
std::vector<Trajectory> aggregate_base(const ImpactBase& base, const HdbTargets& targets = {});

}  // namespace hdb
