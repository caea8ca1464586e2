#pragma once

// Flat "key = value" text used by the run config and the constants file.
// '#' starts a comment, blank lines are ignored, keys may not repeat.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fwm {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

std::vector<KvEntry> parse_kv_text(std::string_view text);

/// Locale-independent parse of the whole value; ConfigError names the line and key on failure.
double parse_real(const KvEntry& entry);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fwm
