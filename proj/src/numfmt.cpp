#include "heatwave/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "heatwave/errors.hpp"

namespace heatwave {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    const auto b = text.find_first_not_of(" \t\r");
    const auto e = text.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw ConfigError("empty number");
    const std::string t = text.substr(b, e - b + 1);
    if (t == "nan") return std::nan("");
    if (t == "inf") return INFINITY;
    if (t == "-inf") return -INFINITY;
    double v = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError("malformed number '" + t + "'");
    return v;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
        out << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw Error(path.string() + ": missing header");
    t.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.header.size())
            throw Error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.header.size()) + " columns, found " + std::to_string(cells.size()));
        std::vector<double> row;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            try {
                row.push_back(parse_double(cells[j]));
            } catch (const ConfigError&) {
                throw Error(path.string() + ":" + std::to_string(lineno) + ": column '" + t.header[j] +
                            "' is not numeric");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void validate_csv(const std::filesystem::path& path, const std::vector<std::string>& header) {
    const CsvTable t = read_csv(path);
    for (std::size_t j = 0; j < std::max(header.size(), t.header.size()); ++j) {
        const std::string want = j < header.size() ? header[j] : "<none>";
        const std::string got = j < t.header.size() ? t.header[j] : "<missing>";
        if (want != got)
            throw Error(path.string() + ": column " + std::to_string(j + 1) + " is '" + got + "', expected '" +
                        want + "'");
    }
    if (t.rows.empty()) throw Error(path.string() + ": no data rows after the header");
}

}  // namespace heatwave
