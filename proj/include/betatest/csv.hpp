#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "betatest/errors.hpp"

namespace betatest {

struct CsvMatrix {
    Eigen::MatrixXd values;
    bool had_header = false;
    std::vector<std::string> header;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;  // from_chars rejects a leading '+'
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

}  // namespace detail

/// Parses a numeric matrix from CSV text. The delimiter (comma or tab) is
/// taken from the first non-empty line; a first row with any non-numeric
/// cell is treated as a header. Parsing is locale-independent.
inline CsvMatrix read_csv(std::istream& in, bool transpose = false) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!detail::trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw InputError("CSV input is empty");

    const char delim = lines.front().find('\t') != std::string::npos ? '\t' : ',';

    CsvMatrix result;
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto cells = detail::split(lines[r], delim);
        std::vector<double> parsed(cells.size());
        bool all_numeric = true;
        std::size_t bad_col = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!detail::parse_double(cells[c], parsed[c])) {
                all_numeric = false;
                bad_col = c;
                break;
            }
        }
        if (r == 0 && !all_numeric) {
            result.had_header = true;
            for (const auto& cell : cells) result.header.emplace_back(detail::trim(cell));
            continue;
        }
        if (!all_numeric)
            throw InputError("CSV row " + std::to_string(r + 1) + ", column " +
                             std::to_string(bad_col + 1) + ": cell '" + cells[bad_col] +
                             "' is not numeric");
        if (width == 0) width = parsed.size();
        if (parsed.size() != width)
            throw InputError("CSV row " + std::to_string(r + 1) + " has " +
                             std::to_string(parsed.size()) + " cells, expected " +
                             std::to_string(width));
        rows.push_back(std::move(parsed));
    }
    if (rows.empty()) throw InputError("CSV input has a header but no data rows");
    if (result.had_header && !result.header.empty() && result.header.size() != width)
        throw InputError("CSV header has " + std::to_string(result.header.size()) +
                         " cells but data rows have " + std::to_string(width));

    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    if (transpose)
        result.values = m.transpose();
    else
        result.values = std::move(m);
    return result;
}

inline CsvMatrix read_csv_file(const std::string& path, bool transpose = false) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open CSV file: " + path);
    try {
        return read_csv(in, transpose);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace betatest
