#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "msfs/core/error.hpp"

namespace msfs::cli {

using json = nlohmann::json;

// Typed access to one JSON object with field-level error messages. Every
// key must be read, so misspelled fields are reported instead of ignored.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    template <class T>
    T get(const std::string& key, T fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        return convert<T>(j_.at(key), where(key));
    }

    template <class T>
    T require(const std::string& key) {
        used_.insert(key);
        if (!j_.contains(key)) fail(where(key), "missing required field");
        return convert<T>(j_.at(key), where(key));
    }

    // A number or a list of numbers.
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        const auto& v = j_.at(key);
        if (v.is_number()) return {v.get<double>()};
        return convert<std::vector<double>>(v, where(key));
    }

    // A list of integers, or {"from": a, "to": b} inclusive.
    std::vector<int> int_range(const std::string& key, std::vector<int> fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        const auto& v = j_.at(key);
        if (v.is_object()) {
            Fields r(v, where(key));
            const int a = r.require<int>("from"), b = r.require<int>("to");
            r.finish();
            if (b < a) fail(where(key), "'to' is below 'from'");
            std::vector<int> out;
            for (int i = a; i <= b; ++i) out.push_back(i);
            return out;
        }
        if (v.is_number_integer()) return {v.get<int>()};
        return convert<std::vector<int>>(v, where(key));
    }

    Fields object(const std::string& key) {
        used_.insert(key);
        static const json empty = json::object();
        return Fields(j_.contains(key) ? j_.at(key) : empty, where(key));
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key())) fail(where(it.key()), "unknown field");
    }

    [[noreturn]] static void fail(const std::string& where, const std::string& what) {
        throw ConfigError("config field '" + where + "': " + what);
    }

private:
    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    template <class T>
    static T convert(const json& v, const std::string& where) {
        try {
            if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long> || std::is_same_v<T, std::uint64_t>) {
                if (!v.is_number_integer()) fail(where, "expected an integer");
                if constexpr (std::is_same_v<T, std::uint64_t>)
                    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)
                        fail(where, "expected a non-negative integer");
            } else if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) fail(where, "expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) fail(where, "expected true or false");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) fail(where, "expected a string");
            }
            return v.get<T>();
        } catch (const json::exception& e) {
            fail(where, e.what());
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

inline std::string read_text(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError(path + ": cannot open config");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline json parse_config_text(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": not valid JSON: " + e.what());
    }
}

}  // namespace msfs::cli
