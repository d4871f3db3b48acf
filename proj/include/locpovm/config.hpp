#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace locpovm {

// Declarative experiment description: one `key.path = value` per line,
// '#' starts a comment, keys nest by dots.  Every key must be consumed by
// the subcommand; leftovers are rejected by name.  The raw bytes are kept
// for byte-exact echoing into outputs.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(std::string text);

    const std::string& raw() const { return raw_; }

    bool has(const std::string& key) const;
    // keys under `prefix.` (returned without the prefix)
    std::vector<std::string> keys_under(const std::string& prefix) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    // comma-separated reals
    std::vector<double> get_double_list(const std::string& key);
    std::vector<double> get_double_list(const std::string& key,
                                        const std::string& fallback);

    // throws ConfigError naming the first key nothing consumed
    void reject_unconsumed() const;

    // effective settings after defaults, for the config echo: sorted key=value
    const std::map<std::string, std::string>& effective() const { return effective_; }
    void note_effective(const std::string& key, const std::string& value);

  private:
    std::string consume(const std::string& key);  // throws if missing
    bool try_consume(const std::string& key, std::string& out);

    std::string raw_;
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> consumed_;
    std::map<std::string, std::string> effective_;
};

}  // namespace locpovm
