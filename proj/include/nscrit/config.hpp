#pragma once

// Flat key=value run configuration. '#' starts a comment, blank lines are
// skipped, keys may not repeat. Typed getters record every value they
// resolve (including defaults) so a run manifest can echo the full effective
// configuration, not just the keys the user happened to write.

#include <map>
#include <string>

namespace nscrit {

class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    // defaulted getters (record the resolved value)
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // required getters (throw if the key is absent)
    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;
    int require_int(const std::string& key) const;

    // everything resolved so far, for manifests
    const std::map<std::string, std::string>& resolved() const { return resolved_; }
    // raw keys as parsed
    const std::map<std::string, std::string>& raw() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> resolved_;
    std::string origin_;

    double parse_double(const std::string& key, const std::string& text) const;
    int parse_int(const std::string& key, const std::string& text) const;
};

}  // namespace nscrit
