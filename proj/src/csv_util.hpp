#pragma once

// Minimal reader for the comma-separated files this library consumes:
// header row, optional double quotes around fields, no embedded newlines.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gts::detail {

struct CsvTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // 1-based file line of each row

    std::optional<std::size_t> find_column(std::string_view name) const;
    // Throws InputError naming the missing column.
    std::size_t column(std::string_view name) const;
    const std::string& cell(std::size_t row, std::size_t col) const;
    double number(std::size_t row, std::size_t col) const;
    [[noreturn]] void fail(std::size_t row, const std::string& what) const;
};

CsvTable read_csv(std::istream& in, const std::string& source);

std::string trim(std::string_view s);
// Whole-string parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view s);

}  // namespace gts::detail
