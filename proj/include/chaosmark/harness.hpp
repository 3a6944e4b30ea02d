#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaosmark/attacks.hpp"
#include "chaosmark/embedder.hpp"

namespace chaosmark {

/// One attack family with the parameter levels to sweep.
struct AttackSweep {
  AttackKind kind = AttackKind::Zeroing;
  std::vector<double> parameters;
  Anchor anchor = Anchor::Center;
  Interpolation interpolation = Interpolation::Nearest;
  JpegScaling jpeg_scaling = JpegScaling::Quality;
};

struct ExperimentGrid {
  SecretKey key;
  std::vector<AttackSweep> attacks;
  std::vector<bool> modes{false, true};  // authenticated flags, in report order
  std::optional<std::filesystem::path> carrier;    // synthetic carrier if absent
  std::optional<std::filesystem::path> watermark;  // synthetic logo if absent
  EmbedConfig embed;
  std::size_t trials = 1;  // repetitions of each gaussian row, seeds seed..seed+trials-1
  std::uint64_t seed = 1;

  void validate() const;
};

/// Sections: [key] (key-file fields), [run] (carrier, watermark, modes,
/// trials, seed, embed_mode, collision_policy, msc_mask, lsc_mask) and one
/// [attack] per family (kind, parameters, anchor, interpolation, scaling). Relative
/// image paths resolve against `base_dir`.
ExperimentGrid parse_grid(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentGrid load_grid(const std::filesystem::path& path);

/// The four attack families at three levels each, as in data/reference_grid.cfg.
ExperimentGrid reference_grid(const SecretKey& key);

struct ReportRow {
  AttackKind kind = AttackKind::Zeroing;
  double parameter = 0.0;
  bool authenticated = false;
  std::optional<double> similarity_pct;  // absent when a stage failed
  double psnr_db = 0.0;                  // attacked vs watermarked
  std::optional<std::uint64_t> seed;     // gaussian rows only
  std::string error;
};

/// Embed once per mode, then attack, extract and compare for every grid
/// point. Rows come out in grid order: attack family, level, mode, trial.
/// A failure marks its row and the run continues. When `artifacts` is set,
/// every intermediate image lands there.
std::vector<ReportRow> run_grid(const ExperimentGrid& grid, const GrayImage& carrier, const Watermark& watermark,
                                const std::optional<std::filesystem::path>& artifacts = std::nullopt);

/// Loads the grid's images (or the synthetic corpus) and runs it.
std::vector<ReportRow> run_grid(const ExperimentGrid& grid,
                                const std::optional<std::filesystem::path>& artifacts = std::nullopt);

inline constexpr std::string_view kCsvHeader = "attack,parameter,authenticated,similarity_pct,psnr_db,seed";

std::string format_csv(const std::vector<ReportRow>& rows);

/// One table per attack family, unauthenticated and authenticated columns side by side.
std::string format_markdown(const std::vector<ReportRow>& rows);

/// Artifact file stem for a row, e.g. "rotation_25_auth" or "gaussian_3_unauth_s7".
std::string artifact_stem(const ReportRow& row);

}  // namespace chaosmark
