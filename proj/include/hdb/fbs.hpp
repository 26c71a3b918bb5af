#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace hdb {

// The two FAOSTAT food balance exports: FBSH is the pre-2014 methodology
// (1961-2013), FBS the current one (2010 onward).
enum class SchemaVariant { Fbsh, Fbs };
enum class Methodology { Old, New };

const char* to_label(Methodology m);

struct FbsRecord {
    int area_code = 0;
    std::string area_name;
    int item_code = 0;
    std::string item_name;
    int element_code = 0;
    std::string element_name;
    int year = 0;
    std::string unit;
    double value = 0.0;
};

struct ParseIssue {
    enum class Kind { BadNumeric, BadYear, NegativeEnergy };
    Kind kind;
    std::size_t row = 0;  // 1-based data row within the file
    std::string column;
    std::string cell;
};

// Per-file account of what was read and what was skipped, so data drift in
// future source releases stays visible.
struct ParseReport {
    std::string source;
    std::size_t rows_read = 0;
    std::size_t records = 0;
    std::vector<ParseIssue> issues;
};

struct SupplyObservation {
    int country_id = 0;  // FAO area code
    int item_code = 0;
    int year = 0;
    double kcal_per_capita_day = 0.0;
    Methodology source = Methodology::Old;
};

struct PopulationRecord {
    int country_id = 0;
    int year = 0;
    double persons = 0.0;
    Methodology source = Methodology::Old;
};

struct SuccessionEntry {
    int predecessor = 0;
    std::vector<int> successors;
    int transition_year = 0;  // first year of the successor series
};

struct SpliceConfig {
    int splice_year = 2010;  // first year taken from the new methodology
    std::vector<SuccessionEntry> succession;
};

// FAOSTAT layout constants.
inline constexpr int kEnergyElementCode = 664;      // Food supply (kcal/capita/day)
inline constexpr int kPopulationElementCode = 511;  // Total Population - Both sexes
inline constexpr int kPopulationItemCode = 2501;
inline constexpr int kMinYear = 1961;
inline constexpr int kMaxYear = 2100;

// Aggregate rows recomputed internally and therefore dropped at ingest:
// FAO regional areas (codes >= 5000), the China sub-areas folded into the
// "China" rollup area 351, and the item-group aggregates 2901-2961.
inline constexpr int kAggregateAreaFloor = 5000;
inline constexpr int kChinaRollupArea = 351;
inline constexpr std::array<int, 4> kChinaSubAreas = {41, 96, 128, 214};
inline constexpr int kAggregateItemLow = 2901;
inline constexpr int kAggregateItemHigh = 2961;

// Parses a FAOSTAT bulk export. Both the long layout (Year + Value columns)
// and the wide-year layout (Y1961, Y1962, ...) are accepted; wide years are
// melted to long form. Cells that are empty are omitted silently; cells that
// fail to parse, years outside [1961, 2100] and negative energy values are
// omitted and recorded in `report`. Structural problems (missing header
// columns, duplicate keys) throw.
std::vector<FbsRecord> parse_fbs_csv(std::istream& in, SchemaVariant variant,
                                     ParseReport& report);

// Keeps only the dietary-energy supply element (kcal/capita/day).
std::vector<FbsRecord> filter_energy_supply(const std::vector<FbsRecord>& records);

// Removes FAO aggregate areas, the China sub-areas and aggregate item groups.
std::vector<FbsRecord> drop_aggregates(const std::vector<FbsRecord>& records);

std::vector<SupplyObservation> to_observations(const std::vector<FbsRecord>& energy_records,
                                               Methodology source);

// Population element, converted to persons (the source unit is 1000 persons).
std::vector<PopulationRecord> extract_population(const std::vector<FbsRecord>& records,
                                                 Methodology source);

// Merges the two methodologies into one continuous panel: rows tagged Old are
// kept for years < splice_year, rows tagged New for years >= splice_year.
// Predecessor states stay distinct series; duplicate keys after filtering
// throw OverlapConflict. Output is sorted by (country, item, year).
std::vector<SupplyObservation> splice_series(const std::vector<SupplyObservation>& old_rows,
                                             const std::vector<SupplyObservation>& new_rows,
                                             const SpliceConfig& cfg);

std::vector<PopulationRecord> splice_population(const std::vector<PopulationRecord>& old_rows,
                                                const std::vector<PopulationRecord>& new_rows,
                                                const SpliceConfig& cfg);

// Succession sanity: entries acyclic, predecessors end before their
// successors start. Throws Error on violation.
void check_succession(const std::vector<SupplyObservation>& panel,
                      const std::vector<SuccessionEntry>& succession);

std::vector<SuccessionEntry> load_succession(std::istream& in);

}  // namespace hdb
