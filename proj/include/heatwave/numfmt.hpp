#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace heatwave {

/// Shortest round-trip decimal form, independent of the C locale; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

/// Parses what format_double writes; throws ConfigError on malformed text.
double parse_double(const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable read_csv(const std::filesystem::path& path);

/// Throws Error naming the first mismatch between the file and the declared header.
void validate_csv(const std::filesystem::path& path, const std::vector<std::string>& header);

}  // namespace heatwave
