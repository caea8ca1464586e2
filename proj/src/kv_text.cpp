#include "fwm/kv_text.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fwm/error.hpp"

namespace fwm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<KvEntry> parse_kv_text(std::string_view text) {
    std::vector<KvEntry> entries;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key", line_no);
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) + "' has no value",
                              line_no);
        }
        if (!seen.emplace(key).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'",
                              line_no);
        }
        entries.push_back({std::string(key), std::string(value), line_no});
    }
    return entries;
}

double parse_real(const KvEntry& entry) {
    double value = 0.0;
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("line " + std::to_string(entry.line) + ": key '" + entry.key + "': expected a number, got '" +
                              entry.value + "'",
                          entry.line);
    }
    return value;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace fwm
