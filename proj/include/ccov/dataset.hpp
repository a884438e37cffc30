#pragma once

// (z, x, y) observation records shared by the simulation, fitting and
// empirical-moment modules, with CSV serialization.

#include "ccov/mathutil.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccov {

struct DataRow {
    double z = 0.0, x = 0.0, y = 0.0;

    bool operator==(const DataRow&) const = default;
};

struct Dataset {
    std::vector<DataRow> rows;
    std::vector<std::int64_t> unit_ids;  // optional; empty or rows.size()
    std::size_t n_dropped_by_filters = 0;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }

    void validate() const {
        if (!unit_ids.empty() && unit_ids.size() != rows.size())
            throw std::invalid_argument("Dataset: unit_ids length mismatch");
        for (const auto& r : rows)
            if (!std::isfinite(r.z) || !std::isfinite(r.x) || !std::isfinite(r.y))
                throw std::invalid_argument("Dataset: non-finite value");
    }

    // Order- and content-sensitive hash of the raw values; used to verify
    // two fits saw the same data.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto feed = [&h](double v) {
            char bytes[sizeof(double)];
            std::memcpy(bytes, &v, sizeof(double));
            h = fnv1a(std::string_view(bytes, sizeof(double)), h);
        };
        for (const auto& r : rows) {
            feed(r.z);
            feed(r.x);
            feed(r.y);
        }
        return h;
    }
};

inline void write_dataset_csv(const Dataset& d, std::ostream& out) {
    out << "z,x,y\n";
    for (const auto& r : d.rows)
        out << format_double(r.z) << ',' << format_double(r.x) << ',' << format_double(r.y)
            << '\n';
}

inline void write_dataset_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_dataset_csv(d, out);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline double parse_csv_number(const std::string& field, int line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error("malformed row at line " + std::to_string(line_no) +
                                 ": '" + field + "' is not a number");
    }
    while (consumed < field.size() &&
           (field[consumed] == ' ' || field[consumed] == '\r' || field[consumed] == '\t'))
        ++consumed;
    if (consumed != field.size())
        throw std::runtime_error("malformed row at line " + std::to_string(line_no) +
                                 ": '" + field + "' is not a number");
    return v;
}

// Reads the plain `z,x,y` layout produced by write_dataset_csv.
inline Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("no rows: file is empty");
    Dataset d;
    int line_no = 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "z,x,y")
        throw std::runtime_error("expected header 'z,x,y', got '" + line + "'");
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw std::runtime_error("malformed row at line " + std::to_string(line_no) +
                                     ": expected 3 fields, got " + std::to_string(fields.size()));
        d.rows.push_back({parse_csv_number(fields[0], line_no),
                          parse_csv_number(fields[1], line_no),
                          parse_csv_number(fields[2], line_no)});
    }
    if (d.rows.empty()) throw std::runtime_error("no rows");
    return d;
}

inline Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_dataset_csv(in);
}

}  // namespace ccov
