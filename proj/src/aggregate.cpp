#include "hdb/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

namespace hdb {

const std::array<const char*, 7> kCanonicalRegions = {
    "East Asia & Pacific",     "Europe & Central Asia", "Latin America & Caribbean",
    "North America",           "South Asia",            "Sub-Saharan Africa",
    "Western Asia & North Africa",
};

void RegionScheme::assign(int country_id, std::string region) {
    entries_[country_id] = std::move(region);
}

const std::string& RegionScheme::region_of(int country_id) const {
    auto it = entries_.find(country_id);
    if (it == entries_.end()) throw UnassignedCountry(country_id);
    return it->second;
}

bool RegionScheme::contains(int country_id) const { return entries_.count(country_id) != 0; }

std::vector<std::string> RegionScheme::regions() const {
    std::vector<std::string> out;
    for (const auto& [_, region] : entries_) out.push_back(region);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RegionScheme load_region_scheme(std::istream& in) {
    auto rows = csv::read_all(in);
    if (rows.empty()) throw Error("empty region scheme");
    csv::Header header(rows.front());
    const std::size_t col_id = header.require("country_id");
    const std::size_t col_region = header.require("region");
    RegionScheme scheme;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || row[0].empty()) continue;
        int id = 0;
        try {
            id = std::stoi(row.at(col_id));
        } catch (const std::exception&) {
            throw Error("bad country_id in region scheme row " + std::to_string(i + 1));
        }
        scheme.assign(id, row.at(col_region));
    }
    return scheme;
}

void PopulationSeries::add(int country_id, int year, double persons) {
    entries_[{country_id, year}] = persons;
}

double PopulationSeries::at(int country_id, int year) const {
    auto it = entries_.find({country_id, year});
    if (it == entries_.end()) throw MissingPopulation(country_id, year);
    return it->second;
}

bool PopulationSeries::has(int country_id, int year) const {
    return entries_.count({country_id, year}) != 0;
}

PopulationSeries population_from_records(const std::vector<PopulationRecord>& records) {
    PopulationSeries out;
    for (const auto& r : records) out.add(r.country_id, r.year, r.persons);
    return out;
}

PopulationSeries load_population(std::istream& in) {
    auto rows = csv::read_all(in);
    if (rows.empty()) throw Error("empty population file");
    csv::Header header(rows.front());
    const std::size_t col_id = header.require("country_id");
    const std::size_t col_year = header.require("year");
    const std::size_t col_pop = header.require("population");
    PopulationSeries out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || row[0].empty()) continue;
        try {
            out.add(std::stoi(row.at(col_id)), std::stoi(row.at(col_year)),
                    std::stod(row.at(col_pop)));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error("bad population row " + std::to_string(i + 1));
        }
    }
    return out;
}

std::vector<RegionSupply> regional_supply(const std::vector<FoodGroupSupply>& supplies,
                                          const PopulationSeries& pop,
                                          const RegionScheme& scheme) {
    std::vector<const FoodGroupSupply*> ordered;
    ordered.reserve(supplies.size());
    for (const auto& s : supplies) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const FoodGroupSupply* a, const FoodGroupSupply* b) {
                  return std::tie(a->year, a->country_id) < std::tie(b->year, b->country_id);
              });

    // (year, region) -> partial sums, folded in sorted country order
    std::map<std::pair<int, std::string>, RegionSupply> acc;
    for (const FoodGroupSupply* s : ordered) {
        const std::string& region = scheme.region_of(s->country_id);
        const double weight = pop.at(s->country_id, s->year);
        auto& slot = acc[{s->year, region}];
        slot.region = region;
        slot.year = s->year;
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
            slot.weighted_sum[g] += weight * s->kcal[g];
        }
        slot.population += weight;
    }

    std::vector<RegionSupply> out;
    RegionSupply world;
    int world_year = -1;
    auto flush_world = [&] {
        if (world_year < 0) return;
        world.region = kWorldRegion;
        world.year = world_year;
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
            world.kcal[g] = world.weighted_sum[g] / world.population;
        }
        out.push_back(world);
        world = RegionSupply{};
    };
    for (auto& [key, slot] : acc) {
        if (key.first != world_year) {
            flush_world();
            world_year = key.first;
        }
        for (std::size_t g = 0; g < kReportingGroupCount; ++g) {
            slot.kcal[g] = slot.weighted_sum[g] / slot.population;
            world.weighted_sum[g] += slot.weighted_sum[g];
        }
        world.population += slot.population;
        out.push_back(slot);
    }
    flush_world();

    std::sort(out.begin(), out.end(), [](const RegionSupply& a, const RegionSupply& b) {
        return std::tie(a.region, a.year) < std::tie(b.region, b.year);
    });
    return out;
}

std::string decade_label(int year, int data_end) {
    if (year == data_end && data_end % 10 == 0) year -= 1;
    return std::to_string((year / 10) * 10) + "s";
}

namespace {

DecadeSummary summarize(const std::string& region, const std::string& decade,
                        const std::vector<double>& values) {
    DecadeSummary s;
    s.region = region;
    s.decade = decade;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean_hdbi = sum / static_cast<double>(values.size());
    if (values.size() < 2) {
        s.ci_low = s.ci_high = s.mean_hdbi;
        s.degenerate = true;
        return s;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean_hdbi) * (v - s.mean_hdbi);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    s.ci_low = s.mean_hdbi - half;
    s.ci_high = s.mean_hdbi + half;
    return s;
}

// region -> values entering the CI, under the chosen sampling unit
std::map<std::string, std::vector<double>> bin_values(const std::vector<HdbiScore>& scores,
                                                      const RegionScheme& scheme,
                                                      const std::string& decade, CiUnit unit,
                                                      int data_end) {
    std::vector<const HdbiScore*> ordered;
    for (const auto& s : scores) {
        if (decade_label(s.year, data_end) == decade) ordered.push_back(&s);
    }
    std::sort(ordered.begin(), ordered.end(), [](const HdbiScore* a, const HdbiScore* b) {
        return std::tie(a->country_id, a->year) < std::tie(b->country_id, b->year);
    });

    std::map<std::string, std::vector<double>> values;
    if (unit == CiUnit::CountryYear) {
        for (const HdbiScore* s : ordered) {
            const std::string& region = scheme.region_of(s->country_id);
            values[region].push_back(s->hdbi);
            values[kWorldRegion].push_back(s->hdbi);
        }
        return values;
    }
    // one value per country: its mean over the bin
    std::map<int, std::pair<double, std::size_t>> per_country;
    for (const HdbiScore* s : ordered) {
        auto& slot = per_country[s->country_id];
        slot.first += s->hdbi;
        slot.second += 1;
    }
    for (const auto& [country, slot] : per_country) {
        const double mean = slot.first / static_cast<double>(slot.second);
        values[scheme.region_of(country)].push_back(mean);
        values[kWorldRegion].push_back(mean);
    }
    return values;
}

}  // namespace

std::vector<DecadeSummary> decade_mean_hdbi(const std::vector<HdbiScore>& scores,
                                            const RegionScheme& scheme,
                                            const std::string& decade, CiUnit unit,
                                            int data_end) {
    auto values = bin_values(scores, scheme, decade, unit, data_end);
    std::vector<DecadeSummary> out;
    for (const auto& [region, vals] : values) {
        if (region == kWorldRegion) continue;
        out.push_back(summarize(region, decade, vals));
    }
    if (auto it = values.find(kWorldRegion); it != values.end()) {
        out.push_back(summarize(kWorldRegion, decade, it->second));
    }
    return out;
}

DecadeSummary decade_mean_hdbi_for(const std::vector<HdbiScore>& scores,
                                   const RegionScheme& scheme, const std::string& region,
                                   const std::string& decade, CiUnit unit, int data_end) {
    auto values = bin_values(scores, scheme, decade, unit, data_end);
    auto it = values.find(region);
    if (it == values.end() || it->second.empty()) throw EmptyBin(region, decade);
    return summarize(region, decade, it->second);
}

std::vector<DecadeEnergy> decade_mean_energy(const std::vector<RegionSupply>& region_supplies,
                                             const std::string& decade, int data_end) {
    std::map<std::string, std::pair<double, std::size_t>> acc;  // region -> (sum, n_years)
    for (const auto& rs : region_supplies) {
        if (decade_label(rs.year, data_end) != decade) continue;
        double total = 0.0;
        for (double k : rs.kcal) total += k;
        auto& slot = acc[rs.region];
        slot.first += total;
        slot.second += 1;
    }
    std::vector<DecadeEnergy> out;
    for (const auto& [region, slot] : acc) {
        out.push_back({region, decade, slot.first / static_cast<double>(slot.second),
                       slot.second});
    }
    return out;
}

std::vector<DecadeEnergy> decade_mean_energy(const std::vector<FoodGroupSupply>& supplies,
                                             const PopulationSeries& pop,
                                             const RegionScheme& scheme,
                                             const std::string& decade, int data_end) {
    return decade_mean_energy(regional_supply(supplies, pop, scheme), decade, data_end);
}

}  // namespace hdb
