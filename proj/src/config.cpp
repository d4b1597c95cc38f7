#include "levy/config.hpp"

#include "levy/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace levy {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ConfigError(context + ": '" + t + "' is not a number");
    }
    if (pos != t.size()) throw ConfigError(context + ": '" + t + "' is not a number");
    return v;
}

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
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
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Config cfg = parse(ss.str(), path);
    cfg.base_dir_ = std::filesystem::path(path).parent_path().string();
    return cfg;
}

const std::string& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing key '" + key + "'");
    return it->second;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    return parse_double(get(key), origin_ + ": key '" + key + "'");
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != static_cast<double>(static_cast<long long>(v)))
        throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
    return static_cast<long long>(v);
}

long long Config::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(origin_ + ": key '" + key + "' must be a boolean");
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(get(key), ','))
        out.push_back(parse_double(item, origin_ + ": key '" + key + "'"));
    return out;
}

Config Config::subset(const std::string& prefix) const {
    Config out;
    out.origin_ = origin_;
    out.base_dir_ = base_dir_;
    const std::string p = prefix + ".";
    for (const auto& [k, v] : values_)
        if (k.rfind(p, 0) == 0) out.values_[k.substr(p.size())] = v;
    return out;
}

std::string Config::resolve(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir_.empty()) return path;
    return (std::filesystem::path(base_dir_) / p).string();
}

std::string Config::to_string() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

}  // namespace levy
