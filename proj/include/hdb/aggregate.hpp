#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hdb/score.hpp"

namespace hdb {

inline constexpr const char* kWorldRegion = "World";

// The canonical 7 world regions, combined from UN-geoscheme subregions.
extern const std::array<const char*, 7> kCanonicalRegions;

class RegionScheme {
public:
    void assign(int country_id, std::string region);
    const std::string& region_of(int country_id) const;  // throws UnassignedCountry
    bool contains(int country_id) const;
    std::vector<std::string> regions() const;  // sorted, unique
    const std::map<int, std::string>& entries() const { return entries_; }

private:
    std::map<int, std::string> entries_;
};

// Reads `country_id,country_name,region` (the name column is optional and
// ignored here; it exists for human upkeep of the file).
RegionScheme load_region_scheme(std::istream& in);

class PopulationSeries {
public:
    void add(int country_id, int year, double persons);
    double at(int country_id, int year) const;  // throws MissingPopulation
    bool has(int country_id, int year) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::pair<int, int>, double> entries_;
};

PopulationSeries population_from_records(const std::vector<PopulationRecord>& records);
// Reads an override file `country_id,year,population`.
PopulationSeries load_population(std::istream& in);

struct RegionSupply {
    std::string region;
    int year = 0;
    GroupKcal kcal{};          // per-capita kcal by group
    GroupKcal weighted_sum{};  // sum of pop_c * kcal_c, kept so that World
                               // recombines from regional partials exactly
    double population = 0.0;
};

// Population-weighted per-capita supply per region-year, plus a World row
// per year built from the regional partial sums. Countries are folded in
// sorted order so results do not depend on input ordering. A supply row
// whose country lacks population for that year throws MissingPopulation;
// a country missing from the scheme throws UnassignedCountry.
std::vector<RegionSupply> regional_supply(const std::vector<FoodGroupSupply>& supplies,
                                          const PopulationSeries& pop,
                                          const RegionScheme& scheme);

struct DecadeSummary {
    std::string region;
    std::string decade;
    double mean_hdbi = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;       // country-year (or country) observations in the bin
    bool degenerate = false; // single observation: CI width is zero
};

// Sampling unit for the confidence interval: each country-year score, or
// each country's decade mean.
enum class CiUnit { CountryYear, CountryDecadeMean };

// Decade labels: "1960s" covers 1961-1969 (data start), and when the data
// window ends on a decade boundary that final year folds into the previous
// bin ("2010s" covers 2010-2020).
std::string decade_label(int year, int data_end = 2020);

// Unweighted mean of member countries' scores in the bin with a normal-
// approximation 95% CI. Regions without scores in the bin are omitted; a
// World row over all countries is appended.
std::vector<DecadeSummary> decade_mean_hdbi(const std::vector<HdbiScore>& scores,
                                            const RegionScheme& scheme,
                                            const std::string& decade,
                                            CiUnit unit = CiUnit::CountryYear,
                                            int data_end = 2020);

// Single-bin accessor; throws EmptyBin when the region-decade has no scores.
DecadeSummary decade_mean_hdbi_for(const std::vector<HdbiScore>& scores,
                                   const RegionScheme& scheme, const std::string& region,
                                   const std::string& decade, CiUnit unit = CiUnit::CountryYear,
                                   int data_end = 2020);

struct DecadeEnergy {
    std::string region;
    std::string decade;
    double mean_kcal = 0.0;
    std::size_t n_years = 0;
};

// Mean over the decade's years of the population-weighted regional total
// energy (six HDB groups plus sugars).
std::vector<DecadeEnergy> decade_mean_energy(const std::vector<RegionSupply>& region_supplies,
                                             const std::string& decade, int data_end = 2020);
std::vector<DecadeEnergy> decade_mean_energy(const std::vector<FoodGroupSupply>& supplies,
                                             const PopulationSeries& pop,
                                             const RegionScheme& scheme,
                                             const std::string& decade, int data_end = 2020);

}  // namespace hdb
