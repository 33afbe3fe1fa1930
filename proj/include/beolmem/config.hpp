#pragma once

// Sectioned key-value configuration with unit-checked quantities.
//
//   # comment
//   include "devices.cfg"          # relative to this file, then the search path
//   [periphery]
//   fo4 = 9 ps
//   leakage_per_um2 = 0.29 nW/um2
//   topologies = GC_NR1W, SRAM8T
//
// Later definitions override earlier ones, so a file can include a base and
// then adjust a few keys. Every physical value must carry a unit whose
// dimension matches what the reader asks for.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beolmem/error.hpp"

namespace beolmem {

/// Exponents of (metre, second, volt, ampere, byte).
struct Dim {
    std::array<int, 5> e{};
    bool operator==(const Dim&) const = default;
    Dim operator*(const Dim& o) const {
        Dim d;
        for (int i = 0; i < 5; ++i) d.e[i] = e[i] + o.e[i];
        return d;
    }
    Dim pow(int n) const {
        Dim d;
        for (int i = 0; i < 5; ++i) d.e[i] = e[i] * n;
        return d;
    }
};

namespace dims {
inline constexpr Dim none{};
inline constexpr Dim length{{1, 0, 0, 0, 0}};
inline constexpr Dim area{{2, 0, 0, 0, 0}};
inline constexpr Dim time{{0, 1, 0, 0, 0}};
inline constexpr Dim voltage{{0, 0, 1, 0, 0}};
inline constexpr Dim current{{0, 0, 0, 1, 0}};
inline constexpr Dim bytes{{0, 0, 0, 0, 1}};
inline constexpr Dim capacitance{{0, 1, -1, 1, 0}};
inline constexpr Dim power{{0, 0, 1, 1, 0}};
inline constexpr Dim energy{{0, 1, 1, 1, 0}};
inline constexpr Dim resistance{{0, 0, 1, -1, 0}};
inline constexpr Dim frequency{{0, -1, 0, 0, 0}};
inline constexpr Dim current_per_length{{-1, 0, 0, 1, 0}};
inline constexpr Dim capacitance_per_length{{-1, 1, -1, 1, 0}};
inline constexpr Dim drive_factor{{-1, 0, -2, 1, 0}};  // A / (V^2 m)
inline constexpr Dim power_per_area{{-2, 0, 1, 1, 0}};
inline constexpr Dim resistance_per_length{{-1, 0, 1, -1, 0}};
inline constexpr Dim energy_per_byte{{0, 1, 1, 1, -1}};
inline constexpr Dim bytes_per_cycle{{0, 0, 0, 0, 1}};  // cycles are dimensionless
}  // namespace dims

inline std::string to_string(const Dim& d) {
    static const char* names[] = {"m", "s", "V", "A", "B"};
    std::string out;
    for (int i = 0; i < 5; ++i) {
        if (!d.e[i]) continue;
        if (!out.empty()) out += ".";
        out += names[i];
        if (d.e[i] != 1) out += "^" + std::to_string(d.e[i]);
    }
    return out.empty() ? "dimensionless" : out;
}

struct Quantity {
    double value = 0;  ///< SI (bytes for information)
    Dim dim;
};

namespace detail {

struct UnitDef {
    double scale;
    Dim dim;
};

inline const std::map<std::string, UnitDef, std::less<>>& unit_table() {
    static const std::map<std::string, UnitDef, std::less<>> t = [] {
        std::map<std::string, UnitDef, std::less<>> m;
        const std::pair<const char*, double> si[] = {{"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6},
                                                     {"m", 1e-3},  {"", 1.0},    {"k", 1e3},  {"M", 1e6},
                                                     {"G", 1e9}};
        const std::pair<const char*, Dim> base[] = {{"m", dims::length},   {"s", dims::time},
                                                    {"V", dims::voltage},  {"A", dims::current},
                                                    {"F", dims::capacitance}, {"W", dims::power},
                                                    {"J", dims::energy},   {"ohm", dims::resistance},
                                                    {"Hz", dims::frequency}};
        for (const auto& [sym, dim] : base)
            for (const auto& [pre, sc] : si) m[std::string(pre) + sym] = {sc, dim};
        m["aF"] = {1e-18, dims::capacitance};
        for (const char* l : {"m", "mm", "um", "nm"}) {
            const auto& d = m[l];
            m[std::string(l) + "2"] = {d.scale * d.scale, dims::area};
        }
        m["B"] = {1, dims::bytes};
        m["kB"] = {1024, dims::bytes};
        m["MB"] = {1024.0 * 1024, dims::bytes};
        m["GB"] = {1024.0 * 1024 * 1024, dims::bytes};
        m["bit"] = {0.125, dims::bytes};
        m["cyc"] = {1, dims::none};
        m["cycle"] = {1, dims::none};
        m["cycles"] = {1, dims::none};
        m["dec"] = {1, dims::none};
        m["%"] = {0.01, dims::none};
        return m;
    }();
    return t;
}

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

/// "A/V^2/um", "nW/um2", "pJ/B": factors joined by '/' or '*', each with an
/// optional integer exponent.
inline UnitDef parse_unit(std::string_view u) {
    UnitDef out{1.0, dims::none};
    std::size_t i = 0;
    int sign = 1;
    while (i < u.size()) {
        std::size_t j = i;
        while (j < u.size() && u[j] != '/' && u[j] != '*') ++j;
        std::string tok = trim(u.substr(i, j - i));
        int exp = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            exp = std::atoi(tok.c_str() + caret + 1);
            tok.resize(caret);
        }
        const auto it = unit_table().find(tok);
        if (tok.empty() || it == unit_table().end()) throw ConfigError("unknown unit '" + std::string(u) + "'");
        out.scale *= std::pow(it->second.scale, sign * exp);
        out.dim = out.dim * it->second.dim.pow(sign * exp);
        if (j < u.size()) sign = u[j] == '/' ? -1 : 1;
        i = j + 1;
    }
    return out;
}

}  // namespace detail

inline Quantity parse_quantity(std::string_view text) {
    const std::string s = detail::trim(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError("expected a number in '" + s + "'");
    if (!std::isfinite(v)) throw ConfigError("non-finite value '" + s + "'");
    const std::string unit = detail::trim(end);
    if (unit.empty()) return {v, dims::none};
    const auto u = detail::parse_unit(unit);
    return {v * u.scale, u.dim};
}

class Config {
  public:
    struct Entry {
        std::string value;
        std::string origin;  ///< file:line
    };

    /// Directories searched for relative config names: the env var
    /// BEOLMEM_CONFIG_PATH (colon-separated), then the current directory.
    static std::vector<std::filesystem::path> search_path() {
        std::vector<std::filesystem::path> out;
        if (const char* env = std::getenv("BEOLMEM_CONFIG_PATH")) {
            std::string_view s(env);
            while (!s.empty()) {
                const auto c = s.find(':');
                if (c) out.emplace_back(std::string(s.substr(0, c)));
                if (c == std::string_view::npos) break;
                s.remove_prefix(c + 1);
            }
        }
        out.emplace_back(".");
        return out;
    }

    static std::filesystem::path resolve(const std::string& name, const std::filesystem::path& relative_to = {}) {
        namespace fs = std::filesystem;
        const fs::path p(name);
        if (p.is_absolute()) {
            if (fs::exists(p)) return p;
        } else {
            if (!relative_to.empty() && fs::exists(relative_to / p)) return relative_to / p;
            for (const auto& dir : search_path())
                if (fs::exists(dir / p)) return dir / p;
        }
        throw ConfigError("config file '" + name + "' not found");
    }

    static Config load(const std::string& name) {
        Config c;
        std::set<std::string> stack;
        c.load_into(resolve(name), stack);
        return c;
    }

    static Config parse(std::string_view text, const std::string& origin = "<string>",
                        const std::filesystem::path& base_dir = {}) {
        Config c;
        std::set<std::string> stack;
        c.parse_into(text, origin, base_dir, stack);
        return c;
    }

    bool has(const std::string& sec, const std::string& key) const {
        const auto s = data_.find(sec);
        return s != data_.end() && s->second.count(key);
    }
    bool has_section(const std::string& sec) const { return data_.count(sec) > 0; }

    std::vector<std::string> sections(std::string_view prefix = {}) const {
        std::vector<std::string> out;
        for (const auto& [k, _] : data_)
            if (k.compare(0, prefix.size(), prefix) == 0) out.push_back(k);
        return out;
    }

    std::vector<std::string> keys(const std::string& sec) const {
        std::vector<std::string> out;
        if (auto s = data_.find(sec); s != data_.end())
            for (const auto& [k, _] : s->second) out.push_back(k);
        return out;
    }

    void set(const std::string& sec, const std::string& key, const std::string& value) {
        data_[sec][key] = {value, "<override>"};
    }

    const Entry& entry(const std::string& sec, const std::string& key) const {
        const auto s = data_.find(sec);
        if (s == data_.end() || !s->second.count(key)) throw ConfigError("missing [" + sec + "] " + key);
        used_.insert(sec + "\x1f" + key);
        return s->second.at(key);
    }

    std::string str(const std::string& sec, const std::string& key) const {
        auto v = entry(sec, key).value;
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
        return v;
    }
    std::string str(const std::string& sec, const std::string& key, const std::string& def) const {
        return has(sec, key) ? str(sec, key) : def;
    }

    double quantity(const std::string& sec, const std::string& key, const Dim& want) const {
        const auto& e = entry(sec, key);
        Quantity q;
        try {
            q = parse_quantity(e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(e.origin + ": [" + sec + "] " + key + ": " + err.what());
        }
        if (!(q.dim == want))
            throw ConfigError(e.origin + ": [" + sec + "] " + key + " = " + e.value + " has dimension " +
                              to_string(q.dim) + ", expected " + to_string(want));
        return q.value;
    }
    double quantity(const std::string& sec, const std::string& key, const Dim& want, double def) const {
        return has(sec, key) ? quantity(sec, key, want) : def;
    }
    void read(const std::string& sec, const std::string& key, const Dim& want, double& out) const {
        if (has(sec, key)) out = quantity(sec, key, want);
    }

    long long integer(const std::string& sec, const std::string& key) const {
        const auto& e = entry(sec, key);
        const double v = quantity(sec, key, dims::none);
        if (v != std::floor(v) || std::abs(v) > 9.0e15)
            throw ConfigError(e.origin + ": [" + sec + "] " + key + " must be an integer");
        return static_cast<long long>(v);
    }
    template <class T>
    void read_int(const std::string& sec, const std::string& key, T& out) const {
        if (has(sec, key)) out = static_cast<T>(integer(sec, key));
    }
    /// Integer with a unit, e.g. `capacity = 64 kB`.
    long long integer(const std::string& sec, const std::string& key, const Dim& want) const {
        const double v = quantity(sec, key, want);
        if (v != std::floor(v)) throw ConfigError(entry(sec, key).origin + ": [" + sec + "] " + key + " must be whole");
        return static_cast<long long>(v);
    }

    bool boolean(const std::string& sec, const std::string& key) const {
        const auto& e = entry(sec, key);
        if (e.value == "true" || e.value == "yes" || e.value == "on" || e.value == "1") return true;
        if (e.value == "false" || e.value == "no" || e.value == "off" || e.value == "0") return false;
        throw ConfigError(e.origin + ": [" + sec + "] " + key + " must be true or false");
    }
    void read_bool(const std::string& sec, const std::string& key, bool& out) const {
        if (has(sec, key)) out = boolean(sec, key);
    }

    std::vector<std::string> list(const std::string& sec, const std::string& key) const {
        std::vector<std::string> out;
        std::stringstream ss(entry(sec, key).value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    std::vector<double> quantity_list(const std::string& sec, const std::string& key, const Dim& want) const {
        std::vector<double> out;
        for (const auto& s : list(sec, key)) {
            const auto q = parse_quantity(s);
            if (!(q.dim == want))
                throw ConfigError(entry(sec, key).origin + ": [" + sec + "] " + key + ": '" + s + "' has dimension " +
                                  to_string(q.dim) + ", expected " + to_string(want));
            out.push_back(q.value);
        }
        return out;
    }

    std::vector<int> int_list(const std::string& sec, const std::string& key) const {
        std::vector<int> out;
        for (double v : quantity_list(sec, key, dims::none)) {
            if (v != std::floor(v)) throw ConfigError("[" + sec + "] " + key + " must list integers");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }

    /// Keys that were never read, as "[section] key (origin)".
    std::vector<std::string> unused() const {
        std::vector<std::string> out;
        for (const auto& [sec, kv] : data_)
            for (const auto& [k, e] : kv)
                if (!used_.count(sec + "\x1f" + k)) out.push_back("[" + sec + "] " + k + " (" + e.origin + ")");
        return out;
    }

  private:
    void load_into(const std::filesystem::path& path, std::set<std::string>& stack) {
        const std::string key = std::filesystem::weakly_canonical(path).string();
        if (stack.count(key)) throw ConfigError("include cycle through '" + path.string() + "'");
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        stack.insert(key);
        parse_into(ss.str(), path.string(), path.parent_path(), stack);
        stack.erase(key);
    }

    void parse_into(std::string_view text, const std::string& origin, const std::filesystem::path& base,
                    std::set<std::string>& stack) {
        std::string section;
        std::size_t line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            bool quoted = false;
            std::size_t cut = raw.size();
            for (std::size_t i = 0; i < raw.size(); ++i) {
                if (raw[i] == '"') quoted = !quoted;
                if (!quoted && raw[i] == '#') {
                    cut = i;
                    break;
                }
            }
            const std::string line = detail::trim(std::string_view(raw).substr(0, cut));
            if (line.empty()) continue;
            const std::string where = origin + ":" + std::to_string(line_no);
            if (line.front() == '[') {
                if (line.back() != ']') throw ParseError(origin + ": unterminated section header", line_no);
                section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
                if (section.empty()) throw ParseError(origin + ": empty section name", line_no);
                data_[section];
                continue;
            }
            if (line.rfind("include", 0) == 0 && line.size() > 7 && std::isspace(static_cast<unsigned char>(line[7]))) {
                std::string target = detail::trim(std::string_view(line).substr(7));
                if (target.size() >= 2 && target.front() == '"' && target.back() == '"')
                    target = target.substr(1, target.size() - 2);
                load_into(resolve(target, base), stack);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(origin + ": expected 'key = value'", line_no);
            if (section.empty()) throw ParseError(origin + ": key outside any [section]", line_no);
            const std::string key = detail::trim(std::string_view(line).substr(0, eq));
            const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
            if (key.empty()) throw ParseError(origin + ": empty key", line_no);
            data_[section][key] = {value, where};
        }
    }

    std::map<std::string, std::map<std::string, Entry>> data_;
    mutable std::set<std::string> used_;
};

}  // namespace beolmem
