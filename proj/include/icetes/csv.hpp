#pragma once

#include <string>
#include <vector>

namespace icetes {

// Minimal CSV support for the project's fixed-schema files. No quoting:
// none of the formats carry free text with commas.
namespace csv {

// Splits one line on commas, trimming surrounding whitespace per field.
std::vector<std::string> split(const std::string& line);

struct Row {
    int line_number = 0;  // 1-based, header included
    std::vector<std::string> fields;
};

// Reads all rows; verifies the header matches `expected_header` exactly.
// Skips blank lines. Throws ValidationError (file missing, bad header).
std::vector<Row> read_file(const std::string& path, const std::vector<std::string>& expected_header);

double parse_double(const Row& row, std::size_t field, const std::string& path);

}  // namespace csv
}  // namespace icetes
