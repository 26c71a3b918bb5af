#include "hdb/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>

#include "hdb/errors.hpp"

namespace hdb::csv {

namespace {

std::string canon(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out = s.substr(b, e - b);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::size_t for_each_row(std::istream& in, const std::function<void(Row&)>& fn) {
    Row row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    bool first_char = true;
    std::size_t count = 0;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        ++count;
        fn(row);
        row.clear();
        row_started = false;
    };

    char c;
    while (in.get(c)) {
        if (first_char) {
            first_char = false;
            // strip UTF-8 BOM
            if (static_cast<unsigned char>(c) == 0xEF) {
                char b1 = 0, b2 = 0;
                in.get(b1);
                in.get(b2);
                if (static_cast<unsigned char>(b1) == 0xBB &&
                    static_cast<unsigned char>(b2) == 0xBF) {
                    continue;
                }
                field.push_back(c);
                field.push_back(b1);
                field.push_back(b2);
                row_started = true;
                continue;
            }
        }
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !field.empty() || !row.empty()) {
                    end_row();
                }
                break;
            default:
                field.push_back(c);
                row_started = true;
                break;
        }
    }
    if (in_quotes) {
        throw Error("unterminated quoted field at end of input");
    }
    if (row_started || !field.empty() || !row.empty()) {
        end_row();
    }
    return count;
}

std::vector<Row> read_all(std::istream& in) {
    std::vector<Row> rows;
    for_each_row(in, [&](Row& r) { rows.push_back(r); });
    return rows;
}

Header::Header(const Row& names) : names_(names) {}

std::optional<std::size_t> Header::find(const std::string& name) const {
    const std::string want = canon(name);
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (canon(names_[i]) == want) return i;
    }
    return std::nullopt;
}

std::size_t Header::require(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw MissingColumn(name);
}

void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        const std::string& f = row[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out << '"';
            for (char c : f) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << f;
        }
    }
    out << '\n';
}

std::string format_fixed(double value, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, value);
    // avoid the "-0.000" artifact
    if (buf[0] == '-') {
        bool all_zero = true;
        for (const char* p = buf + 1; *p; ++p) {
            if (*p != '0' && *p != '.') {
                all_zero = false;
                break;
            }
        }
        if (all_zero) return std::string(buf + 1);
    }
    return buf;
}

}  // namespace hdb::csv
