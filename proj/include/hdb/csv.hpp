#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdb::csv {

using Row = std::vector<std::string>;

// Streams one parsed row at a time to `fn`. Handles quoted fields with
// embedded separators, doubled quotes and newlines, CRLF line endings and a
// leading UTF-8 BOM. Returns the number of rows seen.
std::size_t for_each_row(std::istream& in, const std::function<void(Row&)>& fn);

std::vector<Row> read_all(std::istream& in);

// Column-name lookup over a header row. Matching ignores surrounding
// whitespace and ASCII case.
class Header {
public:
    explicit Header(const Row& names);
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t require(const std::string& name) const;  // throws MissingColumn
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

void write_row(std::ostream& out, const Row& row);

// Fixed decimal formatting used for every numeric output column, so golden
// files are byte-stable across runs.
std::string format_fixed(double value, int places);

}  // namespace hdb::csv
