#include "hdb/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

namespace hdb {

namespace {

struct GroupLabel {
    FoodGroup group;
    const char* label;
};

constexpr GroupLabel kLabels[] = {
    {FoodGroup::StarchyStaples, "starchy_staples"},
    {FoodGroup::Fruits, "fruits"},
    {FoodGroup::Vegetables, "vegetables"},
    {FoodGroup::AnimalSourceFoods, "animal_source_foods"},
    {FoodGroup::LegumesNutsSeeds, "legumes_nuts_seeds"},
    {FoodGroup::OilsFats, "oils_fats"},
    {FoodGroup::Sugars, "sugars"},
    {FoodGroup::Excluded, "excluded"},
};

std::string canon(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

const char* to_label(FoodGroup g) {
    for (const auto& l : kLabels) {
        if (l.group == g) return l.label;
    }
    return "?";
}

std::optional<FoodGroup> group_from_label(std::string_view label) {
    const std::string want = canon(label);
    for (const auto& l : kLabels) {
        if (want == l.label) return l.group;
    }
    return std::nullopt;
}

void CommodityMap::add(int item_code, FoodGroup group, std::string note) {
    auto [_, inserted] = entries_.emplace(item_code, MapEntry{group, std::move(note)});
    if (!inserted) throw DuplicateMapping(item_code);
}

FoodGroup CommodityMap::classify(int item_code) const {
    auto it = entries_.find(item_code);
    if (it == entries_.end()) throw Unmapped(item_code);
    return it->second.group;
}

bool CommodityMap::contains(int item_code) const {
    return entries_.count(item_code) != 0;
}

CommodityMap load_commodity_map(std::istream& in) {
    auto rows = csv::read_all(in);
    if (rows.empty()) throw Error("empty commodity map");
    csv::Header header(rows.front());
    const std::size_t col_item = header.require("item_code");
    const std::size_t col_group = header.require("group");
    const auto col_note = header.find("note");

    CommodityMap map;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || row[0].empty()) continue;
        int item_code = 0;
        try {
            item_code = std::stoi(row.at(col_item));
        } catch (const std::exception&) {
            throw Error("bad item_code in commodity map row " + std::to_string(i + 1));
        }
        const std::string& label = row.at(col_group);
        auto group = group_from_label(label);
        if (!group) throw UnknownGroup(label);
        std::string note;
        if (col_note && *col_note < row.size()) note = row[*col_note];
        map.add(item_code, *group, std::move(note));
    }
    return map;
}

std::vector<FoodGroupSupply> group_supply(std::vector<SupplyObservation> observations,
                                          const CommodityMap& map) {
    // classify everything first so a gap is reported before any work is done
    for (const auto& o : observations) map.classify(o.item_code);

    std::sort(observations.begin(), observations.end(),
              [](const SupplyObservation& a, const SupplyObservation& b) {
                  return std::tie(a.country_id, a.year, a.item_code) <
                         std::tie(b.country_id, b.year, b.item_code);
              });

    std::vector<FoodGroupSupply> out;
    for (const auto& o : observations) {
        if (out.empty() || out.back().country_id != o.country_id || out.back().year != o.year) {
            out.push_back({o.country_id, o.year, GroupKcal{}});
        }
        const FoodGroup g = map.classify(o.item_code);
        if (g == FoodGroup::Excluded) continue;
        out.back().kcal[group_index(g)] += o.kcal_per_capita_day;
    }
    return out;
}

}  // namespace hdb
