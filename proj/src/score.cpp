#include "hdb/score.hpp"

#include <algorithm>

namespace hdb {

double HdbTargets::target(FoodGroup g) const {
    switch (g) {
        case FoodGroup::StarchyStaples: return starchy_staples;
        case FoodGroup::Fruits: return fruits;
        case FoodGroup::Vegetables: return vegetables;
        case FoodGroup::AnimalSourceFoods: return animal_source_foods;
        case FoodGroup::LegumesNutsSeeds: return legumes_nuts_seeds;
        case FoodGroup::OilsFats: return oils_fats;
        case FoodGroup::Sugars: return sugar_reference;
        case FoodGroup::Excluded: break;
    }
    return 0.0;
}

double HdbTargets::total() const {
    return starchy_staples + fruits + vegetables + animal_source_foods + legumes_nuts_seeds +
           oils_fats;
}

double adequacy_ratio(const FoodGroupSupply& supply, FoodGroup group, const HdbTargets& targets) {
    return supply.kcal[group_index(group)] / targets.target(group);
}

GroupRatios adequacy_ratios(const FoodGroupSupply& supply, const HdbTargets& targets) {
    GroupRatios out{};
    for (FoodGroup g : kReportingGroups) {
        out[group_index(g)] = adequacy_ratio(supply, g, targets);
    }
    return out;
}

double hdbi(const GroupRatios& ratios) {
    double shortfall = 0.0;
    for (FoodGroup g : kReportingGroups) {
        if (g == FoodGroup::Sugars) continue;
        shortfall += std::max(0.0, 1.0 - ratios[group_index(g)]);
    }
    return 1.0 - shortfall / kHdbGroupCount;
}

double total_energy(const FoodGroupSupply& supply) {
    double sum = 0.0;
    for (FoodGroup g : kReportingGroups) sum += supply.kcal[group_index(g)];
    return sum;
}

HdbiScore score(const FoodGroupSupply& supply, const HdbTargets& targets) {
    HdbiScore s;
    s.country_id = supply.country_id;
    s.year = supply.year;
    s.ratios = adequacy_ratios(supply, targets);
    s.hdbi = hdbi(s.ratios);
    return s;
}

}  // namespace hdb
