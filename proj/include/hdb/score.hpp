#pragma once

#include <array>

#include "hdb/mapping.hpp"

namespace hdb {

// Benchmark diet: six group targets totalling 2330 kcal/day, plus the
// sugars reference of 10% of that total.
struct HdbTargets {
    double starchy_staples = 1160.0;
    double fruits = 160.0;
    double vegetables = 110.0;
    double animal_source_foods = 300.0;
    double legumes_nuts_seeds = 300.0;
    double oils_fats = 300.0;
    double sugar_reference = 233.0;

    double target(FoodGroup g) const;
    double total() const;  // sum of the six group targets
};

using GroupRatios = std::array<double, kReportingGroupCount>;

// q_i / Q_i for the six HDB groups; kcal / sugar_reference for Sugars.
double adequacy_ratio(const FoodGroupSupply& supply, FoodGroup group,
                      const HdbTargets& targets = {});

GroupRatios adequacy_ratios(const FoodGroupSupply& supply, const HdbTargets& targets = {});

// 1 minus the mean clamped shortfall over the six HDB groups. Excesses never
// offset deficits; the Sugars entry is ignored. Result lies in [0, 1] for
// non-negative ratios.
double hdbi(const GroupRatios& ratios);

// Six HDB group kcal plus sugars kcal.
double total_energy(const FoodGroupSupply& supply);

struct HdbiScore {
    int country_id = 0;
    int year = 0;
    GroupRatios ratios{};
    double hdbi = 0.0;
};

HdbiScore score(const FoodGroupSupply& supply, const HdbTargets& targets = {});

}  // namespace hdb
