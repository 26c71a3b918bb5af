#include <doctest.h>

#include <random>
#include <sstream>

#include "hdb/errors.hpp"
#include "hdb/project.hpp"

using namespace hdb;

namespace {

std::vector<ImpactUnit> units_from(const std::string& text) {
    std::istringstream in(text);
    return load_impact_units(in);
}

DeltaTable deltas_from(const std::string& text, int base_year = 2010) {
    std::istringstream in(text);
    return load_deltas(in, base_year);
}

FoodGroupSupply supply(int country, int year, std::initializer_list<double> kcal7) {
    FoodGroupSupply s;
    s.country_id = country;
    s.year = year;
    std::size_t i = 0;
    for (double v : kcal7) s.kcal[i++] = v;
    return s;
}

}  // namespace

TEST_CASE("unit membership load") {
    auto units = units_from(
        "unit_id,member_country_id,excluded_flag,member_name\n"
        "Baltic States,63,0,Estonia\n"
        "Baltic States,126,0,Lithuania\n"
        "Baltic States,119,0,Latvia\n"
        "Other Caribbean,0,1,Aruba\n"
        "Other Caribbean,12,1,Bahamas\n");
    REQUIRE(units.size() == 2);
    CHECK(units[0].unit_id == "Baltic States");
    CHECK(units[0].members == std::vector<int>{63, 119, 126});
    CHECK(!units[0].excluded_from_figures);
    CHECK(units[1].excluded_from_figures);
    CHECK(units[1].members == std::vector<int>{12});
}

TEST_CASE("a country may not belong to two units") {
    CHECK_THROWS_AS(units_from("unit_id,member_country_id,excluded_flag\n"
                               "A,63,0\nB,63,0\n"),
                    Error);
}

TEST_CASE("unresolvable unit must be flagged excluded") {
    CHECK_THROWS_AS(units_from("unit_id,member_country_id,excluded_flag\nA,0,0\n"), Error);
}

TEST_CASE("delta load enforces the base-year fixpoint") {
    CHECK_NOTHROW(deltas_from("scenario,unit,group,year,multiplier\n"
                              "Ref,U,fruits,2010,1\nRef,U,fruits,2050,1.2\n"));
    // missing base year
    CHECK_THROWS_AS(deltas_from("scenario,unit,group,year,multiplier\nRef,U,fruits,2050,1.2\n"),
                    Error);
    // base-year multiplier not 1
    CHECK_THROWS_AS(deltas_from("scenario,unit,group,year,multiplier\n"
                                "Ref,U,fruits,2010,1.01\nRef,U,fruits,2050,1.2\n"),
                    Error);
}

TEST_CASE("non-positive multipliers are rejected at load") {
    CHECK_THROWS_AS(deltas_from("scenario,unit,group,year,multiplier\nRef,U,fruits,2010,0\n"),
                    Error);
    CHECK_THROWS_AS(deltas_from("scenario,unit,group,year,multiplier\nRef,U,fruits,2010,-1.2\n"),
                    Error);
}

TEST_CASE("unknown group label in deltas") {
    CHECK_THROWS_AS(deltas_from("scenario,unit,group,year,multiplier\nRef,U,sweets,2010,1\n"),
                    UnknownGroup);
}

TEST_CASE("missing multiplier lookup") {
    auto d = deltas_from("scenario,unit,group,year,multiplier\nRef,U,fruits,2010,1\n");
    CHECK(d.multiplier("Ref", "U", FoodGroup::Fruits, 2010) == 1.0);
    CHECK_THROWS_AS(d.multiplier("Ref", "U", FoodGroup::Fruits, 2020), MissingDelta);
    CHECK_THROWS_AS(d.multiplier("Other", "U", FoodGroup::Fruits, 2010), MissingDelta);
}

TEST_CASE("impact base: single-country unit is the identity") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    PopulationSeries pop;
    pop.add(1, 2010, 5e6);
    auto units = units_from("unit_id,member_country_id,excluded_flag\nU1,1,0\n");
    auto base = build_impact_base({supply(1, 2010, {1100, 90, 60, 220, 80, 150, 200})}, pop,
                                  2010, units, scheme);
    REQUIRE(base.units.size() == 1);
    CHECK(base.units[0].kcal == supply(1, 2010, {1100, 90, 60, 220, 80, 150, 200}).kcal);
    CHECK(base.units[0].population == 5e6);
    CHECK(base.units[0].region == "A");
    CHECK(base.dropped.empty());
}

TEST_CASE("impact base: Baltic-style aggregate is a weighted mean") {
    RegionScheme scheme;
    PopulationSeries pop;
    // Estonia-, Lithuania-, Latvia-like members of one unit
    scheme.assign(63, "Europe & Central Asia");
    scheme.assign(126, "Europe & Central Asia");
    scheme.assign(119, "Europe & Central Asia");
    pop.add(63, 2010, 1.3e6);
    pop.add(126, 2010, 3.1e6);
    pop.add(119, 2010, 2.1e6);
    auto units = units_from(
        "unit_id,member_country_id,excluded_flag\n"
        "Baltic States,63,0\nBaltic States,126,0\nBaltic States,119,0\n");
    auto base = build_impact_base({supply(63, 2010, {900, 0, 0, 0, 0, 0, 0}),
                                   supply(126, 2010, {1200, 0, 0, 0, 0, 0, 0}),
                                   supply(119, 2010, {1000, 0, 0, 0, 0, 0, 0})},
                                  pop, 2010, units, scheme);
    REQUIRE(base.units.size() == 1);
    // (1.3*900 + 3.1*1200 + 2.1*1000) / 6.5 = 1049.230769...
    const double expected = (1.3e6 * 900 + 3.1e6 * 1200 + 2.1e6 * 1000) / 6.5e6;
    CHECK(base.units[0].kcal[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(base.units[0].population == doctest::Approx(6.5e6));
}

TEST_CASE("impact base: missing member drops the unit with a report") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    PopulationSeries pop;
    pop.add(1, 2010, 1e6);
    auto units = units_from(
        "unit_id,member_country_id,excluded_flag\nU1,1,0\nGhost,60,0\n");
    auto base = build_impact_base({supply(1, 2010, {100, 0, 0, 0, 0, 0, 0})}, pop, 2010, units,
                                  scheme);
    REQUIRE(base.units.size() == 1);
    REQUIRE(base.dropped.size() == 1);
    CHECK(base.dropped[0].unit_id == "Ghost");
    CHECK(base.dropped[0].reason == "missing member");
    CHECK(base.dropped[0].missing_members == std::vector<int>{60});
}

TEST_CASE("impact base: excluded unit is dropped with a report") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    PopulationSeries pop;
    pop.add(1, 2010, 1e6);
    auto units = units_from(
        "unit_id,member_country_id,excluded_flag\nU1,1,0\nIslands,0,1\n");
    auto base = build_impact_base({supply(1, 2010, {100, 0, 0, 0, 0, 0, 0})}, pop, 2010, units,
                                  scheme);
    REQUIRE(base.dropped.size() == 1);
    CHECK(base.dropped[0].reason == "excluded");
}

TEST_CASE("apply_deltas scales the base year forward") {
    UnitBase base;
    base.unit_id = "U";
    base.region = "South Asia";
    base.population = 1e6;
    base.kcal[group_index(FoodGroup::LegumesNutsSeeds)] = 126.0;  // ratio 0.42
    auto d = deltas_from(
        "scenario,unit,group,year,multiplier\n"
        "Ref,U,legumes_nuts_seeds,2010,1\n"
        "Ref,U,legumes_nuts_seeds,2050,1.2524\n");
    auto at_base = apply_deltas(base, d, "Ref", 2010);
    CHECK(at_base == base.kcal);  // exact identity at the base year
    auto at_2050 = apply_deltas(base, d, "Ref", 2050);
    const double ratio = at_2050[group_index(FoodGroup::LegumesNutsSeeds)] / 300.0;
    CHECK(ratio == doctest::Approx(0.526).epsilon(0.001));

    // a group with positive base kcal but no multiplier is an error
    base.kcal[group_index(FoodGroup::Fruits)] = 50.0;
    CHECK_THROWS_AS(apply_deltas(base, d, "Ref", 2050), MissingDelta);
}

TEST_CASE("item-level deltas collapse kcal-weighted to group level") {
    CommodityMap map;
    map.add(2511, FoodGroup::StarchyStaples);
    map.add(2514, FoodGroup::StarchyStaples);
    map.add(2615, FoodGroup::Fruits);
    UnitItemKcal composition;
    composition["U"][2511] = 400.0;
    composition["U"][2514] = 100.0;
    composition["U"][2615] = 80.0;
    auto item_deltas = deltas_from(
        "scenario,unit,group,year,multiplier\n"
        "Ref,U,2511,2010,1\nRef,U,2511,2050,1.1\n"
        "Ref,U,2514,2010,1\nRef,U,2514,2050,1.3\n"
        "Ref,U,2615,2010,1\nRef,U,2615,2050,1.05\n");
    REQUIRE(item_deltas.has_items());
    auto collapsed = collapse_item_deltas(item_deltas, composition, map, 2010);
    // (400*1.1 + 100*1.3) / 500 = 1.14
    CHECK(collapsed.multiplier("Ref", "U", FoodGroup::StarchyStaples, 2050) ==
          doctest::Approx(1.14).epsilon(1e-12));
    CHECK(collapsed.multiplier("Ref", "U", FoodGroup::Fruits, 2050) == doctest::Approx(1.05));
    // untouched groups default to 1 (no base kcal, stays zero anyway)
    CHECK(collapsed.multiplier("Ref", "U", FoodGroup::Sugars, 2050) == 1.0);
}

TEST_CASE("unit item composition is population-weighted") {
    PopulationSeries pop;
    pop.add(1, 2010, 1e6);
    pop.add(2, 2010, 3e6);
    auto units = units_from("unit_id,member_country_id,excluded_flag\nU,1,0\nU,2,0\n");
    std::vector<SupplyObservation> obs = {
        {1, 2511, 2010, 100.0, Methodology::New},
        {2, 2511, 2010, 200.0, Methodology::New},
    };
    RegionScheme scheme;
    scheme.assign(1, "A");
    scheme.assign(2, "A");
    auto comp = unit_item_composition(obs, pop, 2010, units);
    REQUIRE(comp.count("U"));
    CHECK(comp["U"][2511] == doctest::Approx((1e6 * 100 + 3e6 * 200) / 4e6));
}

TEST_CASE("trajectory: base-year rows equal the unprojected aggregation exactly") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    scheme.assign(2, "A");
    scheme.assign(3, "B");
    PopulationSeries pop;
    pop.add(1, 2010, 2e6);
    pop.add(2, 2010, 3e6);
    pop.add(3, 2010, 5e6);
    auto units = units_from(
        "unit_id,member_country_id,excluded_flag\nU1,1,0\nU2,2,0\nU3,3,0\n");
    std::vector<FoodGroupSupply> supplies = {
        supply(1, 2010, {1100.3, 91.7, 61.1, 222.9, 83.3, 151.7, 204.1}),
        supply(2, 2010, {950.1, 140.9, 88.8, 160.2, 210.4, 112.6, 260.9}),
        supply(3, 2010, {1500.7, 40.4, 45.5, 90.9, 260.2, 70.1, 120.3}),
    };
    auto base = build_impact_base(supplies, pop, 2010, units, scheme);

    std::ostringstream delta_csv;
    delta_csv << "scenario,unit,group,year,multiplier\n";
    for (const char* scen : {"Ref", "Boost"}) {
        for (const char* unit : {"U1", "U2", "U3"}) {
            for (FoodGroup g : kReportingGroups) {
                delta_csv << scen << ',' << unit << ',' << to_label(g) << ",2010,1\n";
                delta_csv << scen << ',' << unit << ',' << to_label(g) << ",2030,"
                          << (scen == std::string("Boost") ? "1.25" : "1.1") << "\n";
            }
        }
    }
    auto deltas = deltas_from(delta_csv.str());
    auto rows = trajectory(base, deltas);
    auto base_rows = aggregate_base(base);

    int checked = 0;
    for (const auto& t : rows) {
        if (t.year != 2010) continue;
        for (const auto& b : base_rows) {
            if (b.region != t.region) continue;
            CHECK(t.ratios == b.ratios);  // bit-exact fixpoint
            CHECK(t.hdbi == b.hdbi);
            ++checked;
        }
    }
    CHECK(checked == 6);  // 2 scenarios x (2 regions + World)

    // uniformly larger multipliers can never lower the score
    std::map<std::pair<std::string, int>, double> by;
    for (const auto& t : rows) by[{t.scenario + "/" + t.region, t.year}] = t.hdbi;
    for (const auto& region : {"A", "B", "World"}) {
        CHECK(by[{std::string("Boost/") + region, 2030}] >=
              by[{std::string("Ref/") + region, 2030}]);
    }
}

TEST_CASE("sugars multipliers move the sugar ratio but never the index") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    PopulationSeries pop;
    pop.add(1, 2010, 1e6);
    auto units = units_from("unit_id,member_country_id,excluded_flag\nU,1,0\n");
    auto base = build_impact_base({supply(1, 2010, {1160, 160, 110, 300, 300, 300, 233})}, pop,
                                  2010, units, scheme);
    auto deltas = deltas_from(
        "scenario,unit,group,year,multiplier\n"
        "Ref,U,starchy_staples,2010,1\nRef,U,starchy_staples,2030,1\n"
        "Ref,U,fruits,2010,1\nRef,U,fruits,2030,1\n"
        "Ref,U,vegetables,2010,1\nRef,U,vegetables,2030,1\n"
        "Ref,U,animal_source_foods,2010,1\nRef,U,animal_source_foods,2030,1\n"
        "Ref,U,legumes_nuts_seeds,2010,1\nRef,U,legumes_nuts_seeds,2030,1\n"
        "Ref,U,oils_fats,2010,1\nRef,U,oils_fats,2030,1\n"
        "Ref,U,sugars,2010,1\nRef,U,sugars,2030,2.5\n");
    auto rows = trajectory(base, deltas);
    double sugar_2010 = 0, sugar_2030 = 0, hdbi_2010 = 0, hdbi_2030 = 0;
    for (const auto& t : rows) {
        if (t.region != "A") continue;
        (t.year == 2010 ? sugar_2010 : sugar_2030) = t.ratios[group_index(FoodGroup::Sugars)];
        (t.year == 2010 ? hdbi_2010 : hdbi_2030) = t.hdbi;
    }
    CHECK(sugar_2030 == doctest::Approx(2.5 * sugar_2010));
    CHECK(hdbi_2030 == hdbi_2010);
}

TEST_CASE("unit spanning two regions is rejected") {
    RegionScheme scheme;
    scheme.assign(1, "A");
    scheme.assign(2, "B");
    PopulationSeries pop;
    pop.add(1, 2010, 1e6);
    pop.add(2, 2010, 1e6);
    auto units = units_from("unit_id,member_country_id,excluded_flag\nU,1,0\nU,2,0\n");
    CHECK_THROWS_AS(build_impact_base({supply(1, 2010, {1, 0, 0, 0, 0, 0, 0}),
                                       supply(2, 2010, {1, 0, 0, 0, 0, 0, 0})},
                                      pop, 2010, units, scheme),
                    Error);
}
