#pragma once

#include <string>
#include <utility>
#include <vector>

namespace locpovm {

// Flat numeric result set with ordered metadata.  Serialization is fully
// deterministic: shortest round-trip decimals, fixed row and key order.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // emitted in order; keys must not contain ':'
    std::vector<std::pair<std::string, std::string>> metadata;
    std::string config_raw;  // original config bytes, echoed base64 in output
};

// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

std::string base64_encode(const std::string& bytes);
std::string base64_decode(const std::string& text);

// '#'-prefixed metadata block, then the header row, then data rows.
std::string to_csv(const ResultTable& table);
// {"columns": [...], "rows": [[...]], "metadata": {...}} with insertion order.
std::string to_json(const ResultTable& table);

}  // namespace locpovm
