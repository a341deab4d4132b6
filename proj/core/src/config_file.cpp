#include "onebit/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> split_list(std::string_view value) {
    value = trim(value);
    if (!value.empty() && value.front() == '[') {
        if (value.back() != ']') throw ConfigError("unterminated list value '" + std::string(value) + "'");
        value = trim(value.substr(1, value.size() - 2));
    }
    std::vector<std::string> out;
    if (value.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = value.find(',', pos);
        const std::string_view item = trim(value.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        if (item.empty()) throw ConfigError("empty element in list '" + std::string(value) + "'");
        out.emplace_back(unquote(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
    ConfigFile cfg;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        if (view.front() == '[') {
            if (view.back() != ']') throw ConfigError(where + ": malformed section header");
            const std::string_view name = trim(view.substr(1, view.size() - 2));
            if (!valid_identifier(name)) throw ConfigError(where + ": invalid section name");
            section = std::string(name);
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string_view key = trim(view.substr(0, eq));
        const std::string_view value = trim(view.substr(eq + 1));
        if (!valid_identifier(key)) throw ConfigError(where + ": invalid key");
        if (value.empty()) throw ConfigError(where + ": missing value for '" + std::string(key) + "'");
        const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (cfg.entries_.count(full)) throw ConfigError(where + ": duplicate key '" + full + "'");
        cfg.entries_[full] = std::string(unquote(value));
        cfg.origin_[full] = where;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse(in, path.string());
}

std::string ConfigFile::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& key, const std::string& where) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(where + ": invalid numeric value '" + text + "' for '" + key + "'");
    return value;
}

}  // namespace

double ConfigFile::get_double(const std::string& key) const {
    return parse_number<double>(get_string(key), key, origin_.at(key));
}

std::size_t ConfigFile::get_size(const std::string& key) const {
    return parse_number<std::size_t>(get_string(key), key, origin_.at(key));
}

std::uint64_t ConfigFile::get_u64(const std::string& key) const {
    return parse_number<std::uint64_t>(get_string(key), key, origin_.at(key));
}

std::vector<std::string> ConfigFile::get_list(const std::string& key) const {
    try {
        return split_list(get_string(key));
    } catch (const ConfigError& e) {
        throw ConfigError(origin_.at(key) + ": " + e.what());
    }
}

}  // namespace onebit
