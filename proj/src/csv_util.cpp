#include "csv_util.hpp"

#include <charconv>

#include "gts/errors.hpp"

namespace gts::detail {
namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_double(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    const char* first = t.data();
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

CsvTable read_csv(std::istream& in, const std::string& source) {
    CsvTable t;
    t.source = source;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split_line(line);
        if (!have_header) {
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw InputError(source + ": line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                             " fields, header has " + std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(fields));
        t.lines.push_back(lineno);
    }
    if (!have_header) throw InputError(source + ": file is empty");
    return t;
}

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::column(std::string_view name) const {
    if (auto c = find_column(name)) return *c;
    throw InputError(source + ": no column named '" + std::string(name) + "'");
}

const std::string& CsvTable::cell(std::size_t row, std::size_t col) const { return rows.at(row).at(col); }

double CsvTable::number(std::size_t row, std::size_t col) const {
    const auto v = parse_double(cell(row, col));
    if (!v) fail(row, "cannot parse '" + cell(row, col) + "' in column '" + header[col] + "' as a number");
    return *v;
}

void CsvTable::fail(std::size_t row, const std::string& what) const {
    throw InputError(source + ": row " + std::to_string(row + 1) + " (line " + std::to_string(lines.at(row)) +
                     "): " + what);
}

}  // namespace gts::detail
