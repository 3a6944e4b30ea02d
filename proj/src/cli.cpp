#include "chaosmark/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>

#include <CLI11.hpp>

#include "chaosmark/attacks.hpp"
#include "chaosmark/embedder.hpp"
#include "chaosmark/errors.hpp"
#include "chaosmark/harness.hpp"
#include "chaosmark/keyfile.hpp"
#include "chaosmark/netpbm.hpp"

namespace chaosmark {

namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
  using Error::Error;
};

const std::map<std::string, EmbedMode> kModes{{"substitute", EmbedMode::Substitute}, {"negate", EmbedMode::Negate}};
const std::map<std::string, CollisionPolicy> kPolicies{{"probe", CollisionPolicy::Probe},
                                                       {"overwrite", CollisionPolicy::Overwrite}};
const std::map<std::string, Anchor> kAnchors{{"center", Anchor::Center}, {"top-left", Anchor::TopLeft}};
const std::map<std::string, Interpolation> kInterpolations{{"bilinear", Interpolation::Bilinear},
                                                           {"nearest", Interpolation::Nearest}};

bool same_file(const fs::path& a, const fs::path& b) {
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", v);
  return buf;
}

std::string decibels(double v) {
  if (std::isinf(v)) return "inf dB";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f dB", v);
  return buf;
}

std::uint8_t parse_mask(const std::string& text) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used, 16);
  } catch (const std::exception&) {
    throw UsageError("bad bit mask '" + text + "'");
  }
  if (used != text.size() || v > 0xFF) throw UsageError("bad bit mask '" + text + "'");
  return static_cast<std::uint8_t>(v);
}

WatermarkDims parse_dims(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0;
    std::size_t b = 0;
    const int w = std::stoi(text.substr(0, x), &a);
    const int h = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1 || w < 1 || h < 1) throw std::invalid_argument(text);
    return {w, h};
  } catch (const std::exception&) {
    throw UsageError("dims must look like WIDTHxHEIGHT, got '" + text + "'");
  }
}

struct LayoutFlags {
  std::string msc = "F0";
  std::string lsc = "0E";

  void add(CLI::App* cmd) {
    cmd->add_option("--msc-mask", msc, "MSC bits of each pixel, hex")->capture_default_str();
    cmd->add_option("--lsc-mask", lsc, "LSC bits of each pixel, hex")->capture_default_str();
  }

  BitPlaneLayout layout() const {
    try {
      return BitPlaneLayout::make(parse_mask(msc), parse_mask(lsc));
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaotic-iterations watermarking for grayscale images", "chaosmark"};
  app.require_subcommand(1);

  // keygen
  SecretKey key;
  std::string authenticated = "false";
  fs::path key_out;
  auto* keygen = app.add_subcommand("keygen", "Write a secret key file");
  keygen->add_option("--mu", key.mu, "Logistic parameter in (3.57, 4]")->required();
  keygen->add_option("--u0", key.u0, "Logistic seed in (0, 1)")->required();
  keygen->add_option("--burn-in", key.burn_in, "Discarded initial iterates")->capture_default_str();
  keygen->add_option("--mix-iters", key.mix_iters, "Mixing iterations")->capture_default_str();
  keygen->add_option("--authenticated", authenticated, "true or false")
      ->check(CLI::IsMember({"true", "false"}))
      ->capture_default_str();
  keygen->add_option("--out", key_out, "Key file to write")->required();

  // embed
  fs::path carrier_path, watermark_path, key_path, image_out;
  std::string mode = "substitute";
  std::string policy = "probe";
  LayoutFlags embed_layout;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a PBM watermark into a PGM carrier");
  embed_cmd->add_option("--carrier", carrier_path, "Carrier PGM")->required();
  embed_cmd->add_option("--watermark", watermark_path, "Watermark PBM")->required();
  embed_cmd->add_option("--key", key_path, "Key file")->required();
  embed_cmd->add_option("--mode", mode, "substitute or negate")->check(CLI::IsMember({"substitute", "negate"}));
  embed_cmd->add_option("--policy", policy, "probe or overwrite")->check(CLI::IsMember({"probe", "overwrite"}));
  embed_cmd->add_option("--out", image_out, "Watermarked PGM")->required();
  embed_layout.add(embed_cmd);

  // extract
  fs::path marked_path, original_path, reference_path, mark_out;
  std::string dims_text;
  std::string extract_mode = "substitute";
  std::string extract_policy = "probe";
  LayoutFlags extract_layout;
  auto* extract_cmd = app.add_subcommand("extract", "Recover a watermark from a PGM");
  extract_cmd->add_option("--image", marked_path, "Watermarked PGM")->required();
  extract_cmd->add_option("--key", key_path, "Key file")->required();
  extract_cmd->add_option("--mode", extract_mode, "substitute or negate")
      ->check(CLI::IsMember({"substitute", "negate"}));
  extract_cmd->add_option("--policy", extract_policy, "probe or overwrite")
      ->check(CLI::IsMember({"probe", "overwrite"}));
  extract_cmd->add_option("--dims", dims_text, "Watermark size, WIDTHxHEIGHT")->required();
  extract_cmd->add_option("--original", original_path, "Original carrier (negate mode)");
  extract_cmd->add_option("--reference", reference_path, "Watermark PBM to compare against");
  extract_cmd->add_option("--out", mark_out, "Extracted PBM")->required();
  extract_layout.add(extract_cmd);

  // attack
  fs::path attack_in, attack_out;
  std::string attack_kind;
  std::optional<double> size, angle, ratio, sigma;
  std::uint64_t seed = 0;
  std::string anchor = "center";
  std::string interpolation = "nearest";
  std::string jpeg_scaling = "quality";
  auto* attack_cmd = app.add_subcommand("attack", "Apply one attack to a PGM");
  attack_cmd->add_option("--image", attack_in, "Input PGM")->required();
  attack_cmd->add_option("--attack", attack_kind, "zeroing, rotation, jpeg or gaussian")
      ->required()
      ->check(CLI::IsMember({"zeroing", "rotation", "jpeg", "gaussian"}));
  attack_cmd->add_option("--size", size, "Zeroed square side in pixels");
  attack_cmd->add_option("--angle", angle, "Rotation angle in degrees");
  attack_cmd->add_option("--ratio", ratio, "JPEG compression level");
  attack_cmd->add_option("--jpeg-scaling", jpeg_scaling, "quality (level r = quality 100-r) or linear")
      ->check(CLI::IsMember({"quality", "linear"}));
  attack_cmd->add_option("--sigma", sigma, "Gaussian standard deviation");
  attack_cmd->add_option("--seed", seed, "Noise seed")->capture_default_str();
  attack_cmd->add_option("--anchor", anchor, "center or top-left")->check(CLI::IsMember({"center", "top-left"}));
  attack_cmd->add_option("--interpolation", interpolation, "bilinear or nearest")
      ->check(CLI::IsMember({"bilinear", "nearest"}));
  attack_cmd->add_option("--out", attack_out, "Attacked PGM")->required();

  // evaluate
  fs::path config_path, out_dir = "report";
  bool keep_artifacts = false;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run an attack grid and write CSV and markdown reports");
  evaluate_cmd->add_option("--config", config_path, "Grid config")->required();
  evaluate_cmd->add_option("--out-dir", out_dir, "Report directory")->capture_default_str();
  evaluate_cmd->add_flag("--keep-artifacts", keep_artifacts, "Keep every intermediate image");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (keygen->parsed()) {
      key.authenticated = authenticated == "true";
      save_key(key, key_out);
      out << "wrote " << key_out.string() << "\n";
    } else if (embed_cmd->parsed()) {
      if (same_file(image_out, carrier_path)) throw UsageError("refusing to overwrite the carrier " + carrier_path.string());
      const GrayImage carrier = load_pgm(carrier_path);
      const Watermark watermark = load_pbm(watermark_path);
      const SecretKey k = load_key(key_path);
      const EmbedConfig config{kModes.at(mode), embed_layout.layout(), kPolicies.at(policy)};
      const GrayImage marked = embed(carrier, watermark, k, config);
      save_pgm(marked, image_out);
      out << "psnr=" << decibels(psnr(carrier, marked)) << "\n";
    } else if (extract_cmd->parsed()) {
      const EmbedConfig config{kModes.at(extract_mode), extract_layout.layout(), kPolicies.at(extract_policy)};
      if (config.mode == EmbedMode::Negate && original_path.empty()) {
        throw UsageError("negate mode needs --original");
      }
      const WatermarkDims dims = parse_dims(dims_text);
      const GrayImage marked = load_pgm(marked_path);
      const SecretKey k = load_key(key_path);
      std::optional<GrayImage> original;
      if (!original_path.empty()) original = load_pgm(original_path);
      const Watermark extracted = extract(marked, k, config, dims, original ? &*original : nullptr);
      save_pbm(extracted, mark_out);
      if (!reference_path.empty()) {
        out << "similarity=" << percent(similarity(load_pbm(reference_path), extracted).percentage) << "\n";
      }
    } else if (attack_cmd->parsed()) {
      AttackSpec spec;
      spec.kind = *parse_attack_kind(attack_kind);
      const std::map<AttackKind, std::pair<const char*, std::optional<double>*>> flag_of{
          {AttackKind::Zeroing, {"--size", &size}},
          {AttackKind::Rotation, {"--angle", &angle}},
          {AttackKind::Jpeg, {"--ratio", &ratio}},
          {AttackKind::Gaussian, {"--sigma", &sigma}},
      };
      const auto& [flag, value] = flag_of.at(spec.kind);
      if (!*value) throw UsageError(std::string(attack_kind) + " needs " + flag);
      spec.parameter = **value;
      spec.seed = seed;
      spec.anchor = kAnchors.at(anchor);
      spec.interpolation = kInterpolations.at(interpolation);
      spec.jpeg_scaling = jpeg_scaling == "linear" ? JpegScaling::Linear : JpegScaling::Quality;
      if (same_file(attack_out, attack_in)) throw UsageError("refusing to overwrite the input " + attack_in.string());
      save_pgm(apply_attack(load_pgm(attack_in), spec), attack_out);
    } else if (evaluate_cmd->parsed()) {
      if (const char* env = std::getenv("CHAOSMARK_KEEP_ARTIFACTS"); env && std::string(env) == "1") {
        keep_artifacts = true;
      }
      const ExperimentGrid grid = load_grid(config_path);
      fs::create_directories(out_dir);
      const auto rows = run_grid(grid, keep_artifacts ? std::optional(out_dir / "artifacts") : std::nullopt);
      const std::string csv = format_csv(rows);
      const std::string md = format_markdown(rows);
      write_file(out_dir / "report.csv", std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
      write_file(out_dir / "report.md", std::span(reinterpret_cast<const std::uint8_t*>(md.data()), md.size()));
      std::size_t failed = 0;
      for (const auto& row : rows) {
        if (!row.similarity_pct) {
          ++failed;
          err << "row " << artifact_stem(row) << " failed: " << row.error << "\n";
        }
      }
      out << "wrote " << rows.size() << " rows to " << (out_dir / "report.csv").string();
      if (failed) out << " (" << failed << " failed)";
      out << "\n";
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const Error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace chaosmark
