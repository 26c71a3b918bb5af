#include "hdb/fbs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

namespace hdb {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end == begin || (end && *end != '\0')) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<int> parse_int(const std::string& s) {
    auto v = parse_double(s);
    if (!v || *v != std::floor(*v)) return std::nullopt;
    return static_cast<int>(*v);
}

bool is_energy_element(int code, const std::string& name) {
    if (code == kEnergyElementCode) return true;
    const std::string n = lower(name);
    return n.find("food supply") != std::string::npos &&
           n.find("kcal/capita/day") != std::string::npos;
}

bool is_population_element(int code, const std::string& name) {
    if (code == kPopulationElementCode) return true;
    return lower(name).find("total population") != std::string::npos;
}

std::string trimmed(const csv::Row& row, std::size_t idx) {
    if (idx >= row.size()) return {};
    const std::string& s = row[idx];
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

const char* to_label(Methodology m) {
    return m == Methodology::Old ? "old" : "new";
}

std::vector<FbsRecord> parse_fbs_csv(std::istream& in, SchemaVariant /*variant*/,
                                     ParseReport& report) {
    std::vector<FbsRecord> out;
    std::set<std::tuple<int, int, int, int>> seen;

    bool have_header = false;
    std::size_t col_area = 0, col_item = 0, col_element = 0, col_unit = 0;
    std::optional<std::size_t> col_area_name, col_item_name, col_element_name;
    std::optional<std::size_t> col_year, col_value;
    std::vector<std::pair<std::size_t, int>> year_columns;  // wide layout: (index, year)
    std::size_t data_row = 0;

    auto add_record = [&](FbsRecord rec, std::size_t row_no, const std::string& column,
                          const std::string& cell) {
        if (rec.year < kMinYear || rec.year > kMaxYear) {
            report.issues.push_back({ParseIssue::Kind::BadYear, row_no, column, cell});
            return;
        }
        if (rec.value < 0.0 && is_energy_element(rec.element_code, rec.element_name)) {
            report.issues.push_back({ParseIssue::Kind::NegativeEnergy, row_no, column, cell});
            return;
        }
        auto key = std::make_tuple(rec.area_code, rec.item_code, rec.element_code, rec.year);
        if (!seen.insert(key).second) {
            std::ostringstream os;
            os << "area " << rec.area_code << ", item " << rec.item_code << ", element "
               << rec.element_code << ", year " << rec.year;
            throw DuplicateRecord(os.str());
        }
        out.push_back(std::move(rec));
        ++report.records;
    };

    csv::for_each_row(in, [&](csv::Row& row) {
        if (!have_header) {
            csv::Header header(row);
            col_area = header.require("Area Code");
            col_item = header.require("Item Code");
            col_element = header.require("Element Code");
            col_unit = header.require("Unit");
            col_area_name = header.find("Area");
            col_item_name = header.find("Item");
            col_element_name = header.find("Element");
            for (std::size_t i = 0; i < row.size(); ++i) {
                const std::string& name = trimmed(row, i);
                if (name.size() == 5 && (name[0] == 'Y' || name[0] == 'y') &&
                    std::all_of(name.begin() + 1, name.end(),
                                [](unsigned char c) { return std::isdigit(c); })) {
                    year_columns.emplace_back(i, std::atoi(name.c_str() + 1));
                }
            }
            if (year_columns.empty()) {
                col_year = header.require("Year");
                col_value = header.require("Value");
            }
            have_header = true;
            return;
        }
        ++data_row;
        ++report.rows_read;
        if (row.empty() || (row.size() == 1 && trimmed(row, 0).empty())) return;

        FbsRecord base;
        auto area = parse_int(trimmed(row, col_area));
        auto item = parse_int(trimmed(row, col_item));
        auto element = parse_int(trimmed(row, col_element));
        if (!area || !item || !element) {
            report.issues.push_back({ParseIssue::Kind::BadNumeric, data_row,
                                     !area ? "Area Code" : (!item ? "Item Code" : "Element Code"),
                                     !area ? trimmed(row, col_area)
                                           : (!item ? trimmed(row, col_item)
                                                    : trimmed(row, col_element))});
            return;
        }
        base.area_code = *area;
        base.item_code = *item;
        base.element_code = *element;
        base.unit = trimmed(row, col_unit);
        if (col_area_name) base.area_name = trimmed(row, *col_area_name);
        if (col_item_name) base.item_name = trimmed(row, *col_item_name);
        if (col_element_name) base.element_name = trimmed(row, *col_element_name);

        if (!year_columns.empty()) {
            for (const auto& [idx, year] : year_columns) {
                const std::string cell = trimmed(row, idx);
                if (cell.empty()) continue;
                auto value = parse_double(cell);
                if (!value) {
                    report.issues.push_back(
                        {ParseIssue::Kind::BadNumeric, data_row, "Y" + std::to_string(year), cell});
                    continue;
                }
                FbsRecord rec = base;
                rec.year = year;
                rec.value = *value;
                add_record(std::move(rec), data_row, "Y" + std::to_string(year), cell);
            }
        } else {
            const std::string year_cell = trimmed(row, *col_year);
            const std::string value_cell = trimmed(row, *col_value);
            if (value_cell.empty()) return;
            auto year = parse_int(year_cell);
            if (!year) {
                report.issues.push_back(
                    {ParseIssue::Kind::BadYear, data_row, "Year", year_cell});
                return;
            }
            auto value = parse_double(value_cell);
            if (!value) {
                report.issues.push_back(
                    {ParseIssue::Kind::BadNumeric, data_row, "Value", value_cell});
                return;
            }
            FbsRecord rec = base;
            rec.year = *year;
            rec.value = *value;
            add_record(std::move(rec), data_row, "Value", value_cell);
        }
    });

    if (!have_header) throw Error("empty input: no header row");
    return out;
}

std::vector<FbsRecord> filter_energy_supply(const std::vector<FbsRecord>& records) {
    std::vector<FbsRecord> out;
    for (const auto& r : records) {
        if (is_energy_element(r.element_code, r.element_name)) out.push_back(r);
    }
    return out;
}

std::vector<FbsRecord> drop_aggregates(const std::vector<FbsRecord>& records) {
    std::vector<FbsRecord> out;
    for (const auto& r : records) {
        if (r.area_code >= kAggregateAreaFloor) continue;
        if (std::find(kChinaSubAreas.begin(), kChinaSubAreas.end(), r.area_code) !=
            kChinaSubAreas.end()) {
            continue;
        }
        if (r.item_code >= kAggregateItemLow && r.item_code <= kAggregateItemHigh &&
            r.item_code != kPopulationItemCode) {
            continue;
        }
        out.push_back(r);
    }
    return out;
}

std::vector<SupplyObservation> to_observations(const std::vector<FbsRecord>& energy_records,
                                               Methodology source) {
    std::vector<SupplyObservation> out;
    out.reserve(energy_records.size());
    for (const auto& r : energy_records) {
        out.push_back({r.area_code, r.item_code, r.year, r.value, source});
    }
    return out;
}

std::vector<PopulationRecord> extract_population(const std::vector<FbsRecord>& records,
                                                 Methodology source) {
    std::vector<PopulationRecord> out;
    for (const auto& r : records) {
        if (!is_population_element(r.element_code, r.element_name)) continue;
        double persons = r.value;
        if (r.unit.find("1000") != std::string::npos || lower(r.unit) == "1000 no") {
            persons *= 1000.0;
        }
        out.push_back({r.area_code, r.year, persons, source});
    }
    return out;
}

namespace {

// Shared splice rule: a row survives when its methodology tag matches the
// side of the splice year it falls on.
template <typename RecordT, typename KeyFn>
std::vector<RecordT> splice_impl(const std::vector<RecordT>& old_rows,
                                 const std::vector<RecordT>& new_rows, int splice_year,
                                 KeyFn key_of) {
    std::vector<RecordT> out;
    auto eligible = [&](const RecordT& r) {
        return r.source == Methodology::Old ? r.year < splice_year : r.year >= splice_year;
    };
    for (const auto& r : old_rows) {
        if (eligible(r)) out.push_back(r);
    }
    for (const auto& r : new_rows) {
        if (eligible(r)) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [&](const RecordT& a, const RecordT& b) {
        return key_of(a) < key_of(b);
    });
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (key_of(out[i]) == key_of(out[i - 1])) {
            const auto& k = key_of(out[i]);
            throw OverlapConflict(std::get<0>(k), std::get<1>(k), std::get<2>(k));
        }
    }
    return out;
}

}  // namespace

std::vector<SupplyObservation> splice_series(const std::vector<SupplyObservation>& old_rows,
                                             const std::vector<SupplyObservation>& new_rows,
                                             const SpliceConfig& cfg) {
    auto out = splice_impl(old_rows, new_rows, cfg.splice_year,
                           [](const SupplyObservation& o) {
                               return std::make_tuple(o.country_id, o.item_code, o.year);
                           });
    check_succession(out, cfg.succession);
    return out;
}

std::vector<PopulationRecord> splice_population(const std::vector<PopulationRecord>& old_rows,
                                                const std::vector<PopulationRecord>& new_rows,
                                                const SpliceConfig& cfg) {
    return splice_impl(old_rows, new_rows, cfg.splice_year, [](const PopulationRecord& p) {
        return std::make_tuple(p.country_id, 0, p.year);
    });
}

void check_succession(const std::vector<SupplyObservation>& panel,
                      const std::vector<SuccessionEntry>& succession) {
    std::map<int, std::pair<int, int>> span;  // country -> (first, last) year
    for (const auto& o : panel) {
        auto it = span.find(o.country_id);
        if (it == span.end()) {
            span.emplace(o.country_id, std::make_pair(o.year, o.year));
        } else {
            it->second.first = std::min(it->second.first, o.year);
            it->second.second = std::max(it->second.second, o.year);
        }
    }
    std::map<int, std::vector<int>> edges;
    for (const auto& e : succession) {
        for (int s : e.successors) {
            if (s == e.predecessor) {
                throw Error("succession entry lists country " + std::to_string(s) +
                            " as its own successor");
            }
            edges[e.predecessor].push_back(s);
        }
        auto pred = span.find(e.predecessor);
        if (pred != span.end() && pred->second.second >= e.transition_year) {
            throw Error("predecessor " + std::to_string(e.predecessor) +
                        " has data in/after its transition year " +
                        std::to_string(e.transition_year));
        }
        for (int s : e.successors) {
            auto succ = span.find(s);
            if (succ != span.end() && succ->second.first < e.transition_year) {
                throw Error("successor " + std::to_string(s) +
                            " has data before transition year " +
                            std::to_string(e.transition_year));
            }
        }
    }
    // cycle check over the succession graph
    std::map<int, int> state;  // 0 unseen / 1 in progress / 2 done
    std::function<void(int)> visit = [&](int node) {
        int& st = state[node];
        if (st == 1) throw Error("succession entries form a cycle at " + std::to_string(node));
        if (st == 2) return;
        st = 1;
        auto it = edges.find(node);
        if (it != edges.end()) {
            for (int next : it->second) visit(next);
        }
        st = 2;
    };
    for (const auto& [node, _] : edges) visit(node);
}

std::vector<SuccessionEntry> load_succession(std::istream& in) {
    auto rows = csv::read_all(in);
    if (rows.empty()) return {};
    csv::Header header(rows.front());
    const std::size_t col_pred = header.require("predecessor_id");
    const std::size_t col_succ = header.require("successor_ids");
    const std::size_t col_year = header.require("transition_year");
    std::vector<SuccessionEntry> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty() || trimmed(row, 0).empty()) continue;
        SuccessionEntry e;
        auto pred = parse_int(trimmed(row, col_pred));
        auto year = parse_int(trimmed(row, col_year));
        if (!pred || !year) throw Error("bad succession row " + std::to_string(i + 1));
        e.predecessor = *pred;
        e.transition_year = *year;
        std::istringstream ss(trimmed(row, col_succ));
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            if (auto s = parse_int(tok)) e.successors.push_back(*s);
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace hdb
