#include "nscrit/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nscrit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ": line " + std::to_string(lineno) +
                                     ": expected key=value, got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ": line " + std::to_string(lineno) +
                                     ": empty key");
        if (cfg.values_.count(key))
            throw std::runtime_error(origin + ": line " + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
        cfg.values_[key] = val;
    }
    return cfg;
}

double Config::parse_double(const std::string& key, const std::string& text) const {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error(origin_ + ": key '" + key + "': cannot parse '" + text +
                                 "' as a number");
    return v;
}

int Config::parse_int(const std::string& key, const std::string& text) const {
    char* end = nullptr;
    long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error(origin_ + ": key '" + key + "': cannot parse '" + text +
                                 "' as an integer");
    return int(v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    std::string v = it == values_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    double v = it == values_.end() ? fallback : parse_double(key, it->second);
    std::ostringstream os;
    os.precision(17);
    os << v;
    resolved_[key] = os.str();
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    int v = it == values_.end() ? fallback : parse_int(key, it->second);
    resolved_[key] = std::to_string(v);
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    bool v = fallback;
    if (it != values_.end()) {
        const std::string& s = it->second;
        if (s == "true" || s == "1" || s == "yes")
            v = true;
        else if (s == "false" || s == "0" || s == "no")
            v = false;
        else
            throw std::runtime_error(origin_ + ": key '" + key + "': cannot parse '" + s +
                                     "' as a boolean");
    }
    resolved_[key] = v ? "true" : "false";
    return v;
}

std::string Config::require_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
    resolved_[key] = it->second;
    return it->second;
}

double Config::require_double(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
    double v = parse_double(key, it->second);
    resolved_[key] = it->second;
    return v;
}

int Config::require_int(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
    int v = parse_int(key, it->second);
    resolved_[key] = it->second;
    return v;
}

}  // namespace nscrit
