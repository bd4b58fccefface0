#include "icetes/csv.hpp"

#include <cstdlib>
#include <fstream>

#include "icetes/errors.hpp"

namespace icetes {
namespace csv {

namespace {
std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::vector<Row> read_file(const std::string& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");

    std::vector<Row> rows;
    std::string line;
    int line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (!header_seen) {
            if (fields != expected_header) {
                std::string want;
                for (std::size_t i = 0; i < expected_header.size(); ++i) {
                    if (i) want += ",";
                    want += expected_header[i];
                }
                throw ValidationError(path + ":1: header mismatch, expected '" + want + "'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != expected_header.size()) {
            throw ValidationError(path + ":" + std::to_string(line_number) + ": expected " +
                                  std::to_string(expected_header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        rows.push_back(Row{line_number, std::move(fields)});
    }
    if (!header_seen) throw ValidationError(path + ": empty file, missing header");
    return rows;
}

double parse_double(const Row& row, std::size_t field, const std::string& path) {
    const std::string& s = row.fields.at(field);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ValidationError(path + ":" + std::to_string(row.line_number) +
                              ": not a number: '" + s + "'");
    }
    return v;
}

}  // namespace csv
}  // namespace icetes
