#include "chaosmark/keyfile.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>

#include "chaosmark/errors.hpp"
#include "chaosmark/netpbm.hpp"

namespace chaosmark {

namespace {

using Kind = ParseError::Kind;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const ConfigEntry& entry, const std::string& why) {
  throw ParseError(Kind::BadValue, entry.offset, entry.name + "=" + entry.value + ": " + why);
}

constexpr std::array<std::string_view, 5> kKeyFields = {"mu", "u0", "burn_in", "mix_iters", "authenticated"};

}  // namespace

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.name == key) return &e;
  }
  return nullptr;
}

std::vector<ConfigSection> parse_sections(std::string_view text) {
  std::vector<ConfigSection> sections(1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    const std::size_t offset = pos;
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(Kind::MalformedHeader, offset, "bad section header '" + std::string(line) + "'");
      }
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), offset, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(Kind::MalformedHeader, offset, "expected name=value, got '" + std::string(line) + "'");
    }
    ConfigEntry entry{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), offset};
    if (entry.name.empty()) throw ParseError(Kind::MalformedHeader, offset, "empty name");
    auto& section = sections.back();
    if (section.find(entry.name)) {
      throw ParseError(Kind::BadValue, offset, "duplicate '" + entry.name + "'");
    }
    section.entries.push_back(std::move(entry));
  }
  if (sections.front().entries.empty() && sections.size() > 1) sections.erase(sections.begin());
  return sections;
}

double parse_real(const ConfigEntry& entry) {
  double value = 0;
  const auto* first = entry.value.data();
  const auto* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) bad_value(entry, "not a decimal number");
  return value;
}

unsigned long long parse_count(const ConfigEntry& entry) {
  unsigned long long value = 0;
  const auto* first = entry.value.data();
  const auto* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) bad_value(entry, "not a non-negative integer");
  return value;
}

bool parse_flag(const ConfigEntry& entry) {
  if (entry.value == "true") return true;
  if (entry.value == "false") return false;
  bad_value(entry, "expected true or false");
}

std::vector<double> parse_real_list(const ConfigEntry& entry) {
  std::vector<double> out;
  std::string_view rest = entry.value;
  while (true) {
    const auto comma = rest.find(',');
    ConfigEntry item{entry.name, std::string(trim(rest.substr(0, comma))), entry.offset};
    out.push_back(parse_real(item));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

SecretKey key_from_section(const ConfigSection& section) {
  for (const auto& e : section.entries) {
    if (std::find(kKeyFields.begin(), kKeyFields.end(), e.name) == kKeyFields.end()) {
      throw ParseError(Kind::UnknownField, e.offset, "unknown key field '" + e.name + "'");
    }
  }
  auto need = [&](std::string_view name) -> const ConfigEntry& {
    const auto* e = section.find(name);
    if (!e) throw ParseError(Kind::MissingField, section.offset, "missing '" + std::string(name) + "'");
    return *e;
  };
  SecretKey key;
  key.mu = parse_real(need("mu"));
  key.u0 = parse_real(need("u0"));
  const auto burn_in = parse_count(need("burn_in"));
  if (burn_in > std::numeric_limits<std::uint32_t>::max()) bad_value(need("burn_in"), "too large");
  key.burn_in = static_cast<std::uint32_t>(burn_in);
  key.mix_iters = static_cast<std::size_t>(parse_count(need("mix_iters")));
  key.authenticated = parse_flag(need("authenticated"));
  key.validate();
  return key;
}

SecretKey parse_key(std::string_view text) {
  const auto sections = parse_sections(text);
  if (sections.size() != 1 || !sections.front().name.empty()) {
    throw ParseError(Kind::MalformedHeader, 0, "key files have no sections");
  }
  return key_from_section(sections.front());
}

std::string format_key(const SecretKey& key) {
  return "mu=" + format_real(key.mu) + "\n" + "u0=" + format_real(key.u0) + "\n" +
         "burn_in=" + std::to_string(key.burn_in) + "\n" + "mix_iters=" + std::to_string(key.mix_iters) + "\n" +
         "authenticated=" + (key.authenticated ? "true" : "false") + "\n";
}

SecretKey load_key(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return parse_key(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_key(const SecretKey& key, const std::filesystem::path& path) {
  key.validate();
  const std::string text = format_key(key);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace chaosmark
