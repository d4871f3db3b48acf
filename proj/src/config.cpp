#include "locpovm/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "locpovm/errors.hpp"
#include "locpovm/table.hpp"

namespace locpovm {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError("key " + key + " has non-numeric value '" + text + "'");
    return v;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(std::string text) {
    Config cfg;
    cfg.raw_ = std::move(text);
    std::istringstream in(cfg.raw_);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              " has an empty key");
        if (cfg.values_.count(key))
            throw ConfigError("duplicate config key " + key);
        cfg.values_[key] = value;
        cfg.consumed_[key] = false;
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::vector<std::string> Config::keys_under(const std::string& prefix) const {
    std::vector<std::string> out;
    const std::string want = prefix + ".";
    for (const auto& [key, value] : values_)
        if (key.rfind(want, 0) == 0) out.push_back(key.substr(want.size()));
    return out;
}

std::string Config::consume(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key " + key);
    consumed_[key] = true;
    return it->second;
}

bool Config::try_consume(const std::string& key, std::string& out) {
    auto it = values_.find(key);
    if (it == values_.end()) return false;
    consumed_[key] = true;
    out = it->second;
    return true;
}

void Config::note_effective(const std::string& key, const std::string& value) {
    effective_[key] = value;
}

std::string Config::get_string(const std::string& key) {
    const std::string v = consume(key);
    note_effective(key, v);
    return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    std::string v;
    if (!try_consume(key, v)) v = fallback;
    note_effective(key, v);
    return v;
}

double Config::get_double(const std::string& key) {
    const double v = parse_double(key, consume(key));
    note_effective(key, format_double(v));
    return v;
}

double Config::get_double(const std::string& key, double fallback) {
    std::string text;
    const double v = try_consume(key, text) ? parse_double(key, text) : fallback;
    note_effective(key, format_double(v));
    return v;
}

int Config::get_int(const std::string& key) {
    const std::string text = trim(consume(key));
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("key " + key + " must be an integer");
    note_effective(key, std::to_string(v));
    return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) {
    std::string text;
    std::uint64_t v = fallback;
    if (try_consume(key, text)) {
        text = trim(text);
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw ConfigError("key " + key + " must be an unsigned integer");
    }
    note_effective(key, std::to_string(v));
    return v;
}

std::vector<double> Config::get_double_list(const std::string& key) {
    const std::string text = consume(key);
    note_effective(key, trim(text));
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("key " + key + " has an empty list");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::string& fallback) {
    if (!has(key)) {
        Config tmp;
        tmp.values_[key] = fallback;
        tmp.consumed_[key] = false;
        auto v = tmp.get_double_list(key);
        note_effective(key, fallback);
        return v;
    }
    return get_double_list(key);
}

void Config::reject_unconsumed() const {
    for (const auto& [key, done] : consumed_)
        if (!done) throw ConfigError("unknown key " + key);
}

}  // namespace locpovm
