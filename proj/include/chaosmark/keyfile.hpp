#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chaosmark/chaos.hpp"

namespace chaosmark {

struct ConfigEntry {
  std::string name;
  std::string value;
  std::size_t offset = 0;  // byte offset of the line, for diagnostics
};

/// Lines before the first "[name]" header belong to a section with an empty name.
struct ConfigSection {
  std::string name;
  std::size_t offset = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
};

/// UTF-8 text of `name=value` lines grouped under optional `[section]`
/// headers. Blank lines and lines starting with '#' are skipped; whitespace
/// around names and values is trimmed. Duplicate names in a section are an error.
std::vector<ConfigSection> parse_sections(std::string_view text);

/// Reads mu, u0, burn_in, mix_iters, authenticated. All five are required and
/// any other name is rejected.
SecretKey key_from_section(const ConfigSection& section);
SecretKey parse_key(std::string_view text);
std::string format_key(const SecretKey& key);

SecretKey load_key(const std::filesystem::path& path);
void save_key(const SecretKey& key, const std::filesystem::path& path);

// Shared scalar parsers; throw ParseError(BadValue) naming `entry`.
double parse_real(const ConfigEntry& entry);
unsigned long long parse_count(const ConfigEntry& entry);
bool parse_flag(const ConfigEntry& entry);
std::vector<double> parse_real_list(const ConfigEntry& entry);

/// Shortest decimal that reads back to the same double.
std::string format_real(double value);

}  // namespace chaosmark
