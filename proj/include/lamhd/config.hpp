#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace lamhd {

/// Raised on malformed or invalid run configuration; the CLI maps it to the
/// config-error exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat INI-style file: `[section]` headers, `key = value` lines, `#`
/// comments.  Lookups record which keys were consumed so a config with
/// unknown keys can be rejected.
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;

    /// Throws ConfigError listing every key that was never consumed.
    void reject_unknown_keys() const;

private:
    std::string origin_;
    std::map<std::string, std::string> entries_;  // "section.key" -> value
    mutable std::set<std::string> consumed_;
};

} // namespace lamhd
