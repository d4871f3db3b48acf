#include "locpovm/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "locpovm/errors.hpp"

namespace locpovm {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

static const char kB64[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::string& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 3 <= bytes.size()) {
        const unsigned v = (unsigned char)bytes[i] << 16 |
                           (unsigned char)bytes[i + 1] << 8 |
                           (unsigned char)bytes[i + 2];
        out += kB64[v >> 18];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += kB64[v & 63];
        i += 3;
    }
    const size_t rest = bytes.size() - i;
    if (rest == 1) {
        const unsigned v = (unsigned char)bytes[i] << 16;
        out += kB64[v >> 18];
        out += kB64[(v >> 12) & 63];
        out += "==";
    } else if (rest == 2) {
        const unsigned v =
            (unsigned char)bytes[i] << 16 | (unsigned char)bytes[i + 1] << 8;
        out += kB64[v >> 18];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::string base64_decode(const std::string& text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::string out;
    int acc = 0, bits = 0;
    for (char c : text) {
        if (c == '=') break;
        const int v = value_of(c);
        if (v < 0) throw ConfigError("invalid base64 input");
        acc = acc << 6 | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += static_cast<char>((acc >> bits) & 0xff);
        }
    }
    return out;
}

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + ": " + value + "\n";
    if (!table.config_raw.empty())
        out += "# config-b64: " + base64_encode(table.config_raw) + "\n";
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::logic_error("row width does not match column count");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_double(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    nlohmann::ordered_json doc;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        // route through the shared formatter so csv and json print
        // numerically identical values
        for (double v : row) r.push_back(nlohmann::ordered_json::parse(
            std::isfinite(v) ? format_double(v) : "null"));
        doc["rows"].push_back(std::move(r));
    }
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    if (!table.config_raw.empty())
        meta["config-b64"] = base64_encode(table.config_raw);
    doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

}  // namespace locpovm
