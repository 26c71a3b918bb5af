#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdb/fbs.hpp"

namespace hdb {

// Six groups enter the index; Sugars is reported against the 10%-of-energy
// reference but never scored; Excluded items contribute nothing anywhere.
enum class FoodGroup : int {
    StarchyStaples = 0,
    Fruits = 1,
    Vegetables = 2,
    AnimalSourceFoods = 3,
    LegumesNutsSeeds = 4,
    OilsFats = 5,
    Sugars = 6,
    Excluded = 7,
};

inline constexpr int kHdbGroupCount = 6;
inline constexpr int kReportingGroupCount = 7;  // six HDB groups + Sugars

inline constexpr std::array<FoodGroup, kReportingGroupCount> kReportingGroups = {
    FoodGroup::StarchyStaples,   FoodGroup::Fruits,   FoodGroup::Vegetables,
    FoodGroup::AnimalSourceFoods, FoodGroup::LegumesNutsSeeds,
    FoodGroup::OilsFats,          FoodGroup::Sugars,
};

const char* to_label(FoodGroup g);
std::optional<FoodGroup> group_from_label(std::string_view label);

inline std::size_t group_index(FoodGroup g) { return static_cast<std::size_t>(g); }

struct MapEntry {
    FoodGroup group;
    std::string note;
};

// item_code -> food group, total over the ingested panel. Unmapped codes are
// a hard error so silent gaps cannot skew totals.
class CommodityMap {
public:
    void add(int item_code, FoodGroup group, std::string note = {});
    FoodGroup classify(int item_code) const;  // throws Unmapped
    bool contains(int item_code) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<int, MapEntry>& entries() const { return entries_; }

private:
    std::map<int, MapEntry> entries_;
};

// Reads a `item_code,group[,note]` table. Duplicate item codes and unknown
// group labels throw.
CommodityMap load_commodity_map(std::istream& in);

using GroupKcal = std::array<double, kReportingGroupCount>;

struct FoodGroupSupply {
    int country_id = 0;
    int year = 0;
    GroupKcal kcal{};  // indexed by FoodGroup; groups with no items stay 0
};

// Sums observations into per-(country, year) group totals. Input order does
// not matter: rows are accumulated in sorted key order.
std::vector<FoodGroupSupply> group_supply(std::vector<SupplyObservation> observations,
                                          const CommodityMap& map);

}  // namespace hdb
