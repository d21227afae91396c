#include "lamhd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lamhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

KeyValueFile KeyValueFile::parse_string(const std::string& text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value, got '" +
                              line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        const std::string full = section + "." + key;
        if (kv.entries_.count(full)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
        }
        kv.entries_[full] = value;
    }
    return kv;
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
    return entries_.count(section + "." + key) > 0;
}

std::string KeyValueFile::get_string(const std::string& section, const std::string& key,
                                     const std::string& fallback) const {
    const std::string full = section + "." + key;
    consumed_.insert(full);
    const auto it = entries_.find(full);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& section, const std::string& key,
                                double fallback) const {
    const std::string full = section + "." + key;
    consumed_.insert(full);
    const auto it = entries_.find(full);
    if (it == entries_.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0') {
        throw ConfigError(origin_ + ": key '" + full + "' is not a number: '" + it->second + "'");
    }
    return v;
}

long KeyValueFile::get_int(const std::string& section, const std::string& key, long fallback) const {
    const std::string full = section + "." + key;
    consumed_.insert(full);
    const auto it = entries_.find(full);
    if (it == entries_.end()) return fallback;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0') {
        throw ConfigError(origin_ + ": key '" + full + "' is not an integer: '" + it->second + "'");
    }
    return v;
}

void KeyValueFile::reject_unknown_keys() const {
    std::string unknown;
    for (const auto& [full, value] : entries_) {
        if (!consumed_.count(full)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += full;
        }
    }
    if (!unknown.empty()) {
        throw ConfigError(origin_ + ": unknown config keys: " + unknown);
    }
}

} // namespace lamhd
