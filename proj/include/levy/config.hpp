#pragma once

#include <map>
#include <string>
#include <vector>

namespace levy {

/// Line-oriented `key = value` configuration. `#` starts a comment.
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    /// Keys starting with `prefix.`, returned with the prefix stripped.
    Config subset(const std::string& prefix) const;

    /// Resolve a path relative to the directory of the file this config came from.
    std::string resolve(const std::string& path) const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    const std::string& origin() const { return origin_; }
    std::string to_string() const;

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
    std::string base_dir_;
};

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
double parse_double(const std::string& s, const std::string& context);

}  // namespace levy
