#pragma once

// Flat sectioned key/value text format (a TOML subset):
//
//   # comment
//   [framing]
//   pilot_len = 60
//   [experiments]
//   esn0_db = [10, 20, 30, 40]
//
// Keys are addressed as "section.key". Values are kept as raw strings; list
// values are comma separated, optionally wrapped in brackets.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace onebit {

class ConfigFile {
public:
    static ConfigFile parse(std::istream& in, const std::string& source = "<config>");
    static ConfigFile load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    const std::map<std::string, std::string>& entries() const { return entries_; }

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::size_t get_size(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<std::string> get_list(const std::string& key) const;

private:
    std::map<std::string, std::string> entries_;
    std::map<std::string, std::string> origin_;  // key -> "file:line" for diagnostics
};

std::vector<std::string> split_list(std::string_view value);

}  // namespace onebit
