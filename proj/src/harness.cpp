#include "chaosmark/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "chaosmark/corpus.hpp"
#include "chaosmark/errors.hpp"
#include "chaosmark/keyfile.hpp"
#include "chaosmark/netpbm.hpp"

namespace chaosmark {

namespace {

using Kind = ParseError::Kind;

void reject_unknown(const ConfigSection& section, std::initializer_list<std::string_view> allowed) {
  for (const auto& e : section.entries) {
    if (std::find(allowed.begin(), allowed.end(), e.name) == allowed.end()) {
      throw ParseError(Kind::UnknownField, e.offset, "unknown field '" + e.name + "' in [" + section.name + "]");
    }
  }
}

std::uint8_t parse_mask(const ConfigEntry& e) {
  std::string_view s = e.value;
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size() || value > 0xFF || s.empty()) {
    throw ParseError(Kind::BadValue, e.offset, e.name + "=" + e.value + ": expected an 8-bit hex mask");
  }
  return static_cast<std::uint8_t>(value);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string format_psnr(double db) { return std::isinf(db) ? "inf" : fixed2(db); }

std::string_view parameter_label(AttackKind kind) {
  switch (kind) {
    case AttackKind::Zeroing: return "Size (pixels)";
    case AttackKind::Rotation: return "Angle (deg)";
    case AttackKind::Jpeg: return "Ratio";
    case AttackKind::Gaussian: return "Standard dev.";
  }
  return "Parameter";
}

std::string_view family_title(AttackKind kind) {
  switch (kind) {
    case AttackKind::Zeroing: return "Zeroing attack";
    case AttackKind::Rotation: return "Rotation attack";
    case AttackKind::Jpeg: return "JPEG compression";
    case AttackKind::Gaussian: return "Gaussian noise";
  }
  return "Attack";
}

}  // namespace

void ExperimentGrid::validate() const {
  key.validate();
  if (attacks.empty()) throw PreconditionError("experiment grid has no attacks");
  if (modes.empty()) throw PreconditionError("experiment grid has no modes");
  if (trials < 1) throw PreconditionError("trials must be at least 1");
  for (const auto& a : attacks) {
    if (a.parameters.empty()) throw PreconditionError(std::string(to_string(a.kind)) + " has no parameters");
  }
}

ExperimentGrid parse_grid(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentGrid grid;
  grid.attacks.clear();
  bool have_key = false;
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  for (const auto& section : parse_sections(text)) {
    if (section.name == "key") {
      grid.key = key_from_section(section);
      have_key = true;
    } else if (section.name == "run") {
      reject_unknown(section, {"carrier", "watermark", "modes", "trials", "seed", "embed_mode", "collision_policy",
                               "msc_mask", "lsc_mask"});
      if (const auto* e = section.find("carrier")) grid.carrier = resolve(e->value);
      if (const auto* e = section.find("watermark")) grid.watermark = resolve(e->value);
      if (const auto* e = section.find("modes")) {
        grid.modes.clear();
        std::string_view rest = e->value;
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          std::string_view item = rest.substr(0, comma);
          while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
          while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
          if (item == "unauthenticated") {
            grid.modes.push_back(false);
          } else if (item == "authenticated") {
            grid.modes.push_back(true);
          } else {
            throw ParseError(Kind::BadValue, e->offset, "unknown mode '" + std::string(item) + "'");
          }
          rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
      }
      if (const auto* e = section.find("trials")) grid.trials = static_cast<std::size_t>(parse_count(*e));
      if (const auto* e = section.find("seed")) grid.seed = parse_count(*e);
      if (const auto* e = section.find("embed_mode")) {
        if (e->value == "substitute") {
          grid.embed.mode = EmbedMode::Substitute;
        } else if (e->value == "negate") {
          grid.embed.mode = EmbedMode::Negate;
        } else {
          throw ParseError(Kind::BadValue, e->offset, "embed_mode must be substitute or negate");
        }
      }
      if (const auto* e = section.find("collision_policy")) {
        if (e->value == "probe") {
          grid.embed.collision_policy = CollisionPolicy::Probe;
        } else if (e->value == "overwrite") {
          grid.embed.collision_policy = CollisionPolicy::Overwrite;
        } else {
          throw ParseError(Kind::BadValue, e->offset, "collision_policy must be probe or overwrite");
        }
      }
      const auto* msc = section.find("msc_mask");
      const auto* lsc = section.find("lsc_mask");
      if (msc || lsc) {
        try {
          grid.embed.layout = BitPlaneLayout::make(msc ? parse_mask(*msc) : std::uint8_t{0xF0},
                                                   lsc ? parse_mask(*lsc) : std::uint8_t{0x0E});
        } catch (const PreconditionError& err) {
          throw ParseError(Kind::BadValue, section.offset, err.what());
        }
      }
    } else if (section.name == "attack") {
      reject_unknown(section, {"kind", "parameters", "anchor", "interpolation", "scaling"});
      AttackSweep sweep;
      const auto* kind = section.find("kind");
      if (!kind) throw ParseError(Kind::MissingField, section.offset, "[attack] needs kind");
      const auto parsed = parse_attack_kind(kind->value);
      if (!parsed) throw ParseError(Kind::BadValue, kind->offset, "unknown attack '" + kind->value + "'");
      sweep.kind = *parsed;
      const auto* params = section.find("parameters");
      if (!params) throw ParseError(Kind::MissingField, section.offset, "[attack] needs parameters");
      sweep.parameters = parse_real_list(*params);
      if (const auto* e = section.find("anchor")) {
        if (e->value == "center") {
          sweep.anchor = Anchor::Center;
        } else if (e->value == "top-left") {
          sweep.anchor = Anchor::TopLeft;
        } else {
          throw ParseError(Kind::BadValue, e->offset, "anchor must be center or top-left");
        }
      }
      if (const auto* e = section.find("interpolation")) {
        if (e->value == "bilinear") {
          sweep.interpolation = Interpolation::Bilinear;
        } else if (e->value == "nearest") {
          sweep.interpolation = Interpolation::Nearest;
        } else {
          throw ParseError(Kind::BadValue, e->offset, "interpolation must be bilinear or nearest");
        }
      }
      if (const auto* e = section.find("scaling")) {
        if (e->value == "quality") {
          sweep.jpeg_scaling = JpegScaling::Quality;
        } else if (e->value == "linear") {
          sweep.jpeg_scaling = JpegScaling::Linear;
        } else {
          throw ParseError(Kind::BadValue, e->offset, "scaling must be quality or linear");
        }
      }
      grid.attacks.push_back(std::move(sweep));
    } else {
      throw ParseError(Kind::UnknownField, section.offset, "unknown section [" + section.name + "]");
    }
  }
  if (!have_key) throw ParseError(Kind::MissingField, 0, "grid config needs a [key] section");
  try {
    grid.validate();
  } catch (const PreconditionError& err) {
    throw ParseError(Kind::BadValue, 0, err.what());
  }
  return grid;
}

ExperimentGrid load_grid(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return parse_grid(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                    path.parent_path());
}

ExperimentGrid reference_grid(const SecretKey& key) {
  ExperimentGrid grid;
  grid.key = key;
  grid.attacks = {
      {AttackKind::Zeroing, {10, 50, 100}},
      {AttackKind::Rotation, {5, 10, 25}},
      {AttackKind::Jpeg, {2, 5, 10}},
      {AttackKind::Gaussian, {1, 2, 3}},
  };
  return grid;
}

std::string artifact_stem(const ReportRow& row) {
  std::string stem = std::string(to_string(row.kind)) + "_" + format_real(row.parameter) +
                     (row.authenticated ? "_auth" : "_unauth");
  if (row.seed) stem += "_s" + std::to_string(*row.seed);
  return stem;
}

std::vector<ReportRow> run_grid(const ExperimentGrid& grid, const GrayImage& carrier, const Watermark& watermark,
                                const std::optional<std::filesystem::path>& artifacts) {
  grid.validate();
  if (artifacts) {
    std::filesystem::create_directories(*artifacts);
    save_pgm(carrier, *artifacts / "carrier.pgm");
    save_pbm(watermark, *artifacts / "watermark.pbm");
  }
  const WatermarkDims dims{watermark.width(), watermark.height()};

  // Grid order is attack, level, mode, trial; embedding happens once per mode.
  std::map<bool, std::optional<GrayImage>> watermarked;
  std::map<bool, std::string> embed_error;
  for (const bool auth : grid.modes) {
    if (watermarked.contains(auth)) continue;
    SecretKey key = grid.key;
    key.authenticated = auth;
    try {
      watermarked[auth] = embed(carrier, watermark, key, grid.embed);
      if (artifacts) {
        save_pgm(*watermarked[auth], *artifacts / (auth ? "watermarked_auth.pgm" : "watermarked_unauth.pgm"));
      }
    } catch (const Error& err) {
      watermarked[auth] = std::nullopt;
      embed_error[auth] = err.what();
    }
  }

  std::vector<ReportRow> rows;
  for (const auto& sweep : grid.attacks) {
    for (const double level : sweep.parameters) {
      for (const bool auth : grid.modes) {
        const std::size_t trials = sweep.kind == AttackKind::Gaussian ? grid.trials : 1;
        for (std::size_t t = 0; t < trials; ++t) {
          ReportRow row;
          row.kind = sweep.kind;
          row.parameter = level;
          row.authenticated = auth;
          if (sweep.kind == AttackKind::Gaussian) row.seed = grid.seed + t;
          if (!watermarked[auth]) {
            row.error = "embed failed: " + embed_error[auth];
            rows.push_back(std::move(row));
            continue;
          }
          try {
            SecretKey key = grid.key;
            key.authenticated = auth;
            const AttackSpec spec{sweep.kind,          level, row.seed.value_or(0), sweep.anchor,
                                  sweep.interpolation, sweep.jpeg_scaling};
            const GrayImage attacked = apply_attack(*watermarked[auth], spec);
            const Watermark extracted = extract(attacked, key, grid.embed, dims, &carrier);
            row.similarity_pct = similarity(watermark, extracted).percentage;
            row.psnr_db = psnr(attacked, *watermarked[auth]);
            if (artifacts) {
              const std::string stem = artifact_stem(row);
              save_pgm(attacked, *artifacts / ("attacked_" + stem + ".pgm"));
              save_pbm(extracted, *artifacts / ("extracted_" + stem + ".pbm"));
            }
          } catch (const Error& err) {
            row.similarity_pct.reset();
            row.error = err.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<ReportRow> run_grid(const ExperimentGrid& grid, const std::optional<std::filesystem::path>& artifacts) {
  const GrayImage carrier = grid.carrier ? load_pgm(*grid.carrier) : synthetic_carrier();
  const Watermark watermark = grid.watermark ? load_pbm(*grid.watermark) : synthetic_logo();
  return run_grid(grid, carrier, watermark, artifacts);
}

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += std::string(to_string(row.kind)) + "," + format_real(row.parameter) + "," +
           (row.authenticated ? "true" : "false") + ",";
    if (row.similarity_pct) {
      out += fixed2(*row.similarity_pct) + "," + format_psnr(row.psnr_db);
    } else {
      out += "ERROR,ERROR";
    }
    out += ",";
    if (row.seed) out += std::to_string(*row.seed);
    out += '\n';
  }
  return out;
}

std::string format_markdown(const std::vector<ReportRow>& rows) {
  // Cell text per (family, level, mode); gaussian trials are averaged.
  struct Cell {
    double sum = 0.0;
    std::size_t count = 0;
    bool failed = false;
  };
  std::vector<AttackKind> families;
  std::map<AttackKind, std::vector<double>> levels;
  std::map<std::tuple<AttackKind, double, bool>, Cell> cells;
  for (const auto& row : rows) {
    if (std::find(families.begin(), families.end(), row.kind) == families.end()) families.push_back(row.kind);
    auto& lv = levels[row.kind];
    if (std::find(lv.begin(), lv.end(), row.parameter) == lv.end()) lv.push_back(row.parameter);
    auto& cell = cells[{row.kind, row.parameter, row.authenticated}];
    if (row.similarity_pct) {
      cell.sum += *row.similarity_pct;
      ++cell.count;
    } else {
      cell.failed = true;
    }
  }
  auto text = [&](AttackKind kind, double level, bool auth) -> std::string {
    const auto it = cells.find({kind, level, auth});
    if (it == cells.end()) return "-";
    if (it->second.failed) return "ERROR";
    return fixed2(it->second.sum / static_cast<double>(it->second.count)) + "%";
  };

  std::string out = "# Robustness report\n";
  for (const AttackKind kind : families) {
    const std::string label(parameter_label(kind));
    out += "\n## " + std::string(family_title(kind)) + "\n\n";
    out += "| UNAUTHENTICATION | | AUTHENTICATION | |\n";
    out += "|---|---|---|---|\n";
    out += "| **" + label + "** | **Similarity** | **" + label + "** | **Similarity** |\n";
    for (const double level : levels[kind]) {
      const std::string p = format_real(level);
      out += "| " + p + " | " + text(kind, level, false) + " | " + p + " | " + text(kind, level, true) + " |\n";
    }
  }
  return out;
}

}  // namespace chaosmark
