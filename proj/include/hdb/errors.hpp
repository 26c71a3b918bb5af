#pragma once

#include <stdexcept>
#include <string>

namespace hdb {

// Base class for all pipeline errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / stream failures. The CLI maps these to exit code 3.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& name)
        : Error("missing required column: " + name), column(name) {}
    std::string column;
};

// Duplicate (area, item, element, year) key within one source file.
class DuplicateRecord : public Error {
public:
    explicit DuplicateRecord(const std::string& key)
        : Error("duplicate record key: " + key) {}
};

// A (country, item, year) key would appear twice after splicing.
class OverlapConflict : public Error {
public:
    OverlapConflict(int country_id, int item_code, int year)
        : Error("overlap conflict for country " + std::to_string(country_id) +
                ", item " + std::to_string(item_code) + ", year " + std::to_string(year)),
          country_id(country_id), item_code(item_code), year(year) {}
    int country_id, item_code, year;
};

class DuplicateMapping : public Error {
public:
    explicit DuplicateMapping(int item_code)
        : Error("item code mapped twice: " + std::to_string(item_code)), item_code(item_code) {}
    int item_code;
};

class UnknownGroup : public Error {
public:
    explicit UnknownGroup(const std::string& label)
        : Error("unknown food group label: " + label), label(label) {}
    std::string label;
};

class Unmapped : public Error {
public:
    explicit Unmapped(int item_code)
        : Error("item code not covered by the commodity map: " + std::to_string(item_code)),
          item_code(item_code) {}
    int item_code;
};

class UnassignedCountry : public Error {
public:
    explicit UnassignedCountry(int country_id)
        : Error("country not assigned to any region: " + std::to_string(country_id)),
          country_id(country_id) {}
    int country_id;
};

class MissingPopulation : public Error {
public:
    MissingPopulation(int country_id, int year)
        : Error("no population for country " + std::to_string(country_id) +
                " in year " + std::to_string(year)),
          country_id(country_id), year(year) {}
    int country_id, year;
};

class EmptyBin : public Error {
public:
    EmptyBin(const std::string& region, const std::string& decade)
        : Error("no scores for region '" + region + "' in decade " + decade) {}
};

class MissingDelta : public Error {
public:
    MissingDelta(const std::string& scenario, const std::string& unit_id,
                 const std::string& group, int year)
        : Error("no multiplier for scenario '" + scenario + "', unit '" + unit_id +
                "', group '" + group + "', year " + std::to_string(year)) {}
};

}  // namespace hdb
