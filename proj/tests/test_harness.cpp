#include <doctest.h>

#include <filesystem>

#include "chaosmark/corpus.hpp"
#include "chaosmark/errors.hpp"
#include "chaosmark/harness.hpp"
#include "chaosmark/netpbm.hpp"

using namespace chaosmark;
namespace fs = std::filesystem;

namespace {

const SecretKey kKey{3.99, 0.3183, 100, 8192, false};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("reference grid produces 24 rows in grid order") {
  const auto rows = run_grid(reference_grid(kKey));
  REQUIRE(rows.size() == 24);
  CHECK(rows[0].kind == AttackKind::Zeroing);
  CHECK(rows[0].parameter == 10);
  CHECK_FALSE(rows[0].authenticated);
  CHECK(rows[1].authenticated);
  CHECK(rows[23].kind == AttackKind::Gaussian);
  CHECK(rows[23].parameter == 3);
  for (const auto& r : rows) {
    REQUIRE(r.similarity_pct);
    CHECK(*r.similarity_pct >= 0.0);
    CHECK(*r.similarity_pct <= 100.0);
    CHECK(r.seed.has_value() == (r.kind == AttackKind::Gaussian));
  }
  const std::string csv = format_csv(rows);
  CHECK(csv.starts_with(std::string(kCsvHeader) + "\n"));
  CHECK(count_lines(csv) == 25);
  CHECK(csv == format_csv(run_grid(reference_grid(kKey))));
}

TEST_CASE("csv formatting") {
  std::vector<ReportRow> rows(3);
  rows[0] = {AttackKind::Zeroing, 10, false, 99.931, 12.3456, std::nullopt, ""};
  rows[1] = {AttackKind::Gaussian, 2, true, 50.0, 40.0, 8, ""};
  rows[2] = {AttackKind::Jpeg, 5, true, std::nullopt, 0.0, std::nullopt, "boom"};
  ReportRow same{AttackKind::Rotation, 0, false, 100.0, std::numeric_limits<double>::infinity(), std::nullopt, ""};
  rows.push_back(same);
  CHECK(format_csv(rows) ==
        "attack,parameter,authenticated,similarity_pct,psnr_db,seed\n"
        "zeroing,10,false,99.93,12.35,\n"
        "gaussian,2,true,50.00,40.00,8\n"
        "jpeg,5,true,ERROR,ERROR,\n"
        "rotation,0,false,100.00,inf,\n");
  CHECK(artifact_stem(rows[1]) == "gaussian_2_auth_s8");
  CHECK(artifact_stem(rows[0]) == "zeroing_10_unauth");
}

TEST_CASE("markdown pairs modes side by side and averages trials") {
  std::vector<ReportRow> rows = {
      {AttackKind::Gaussian, 1, false, 70.0, 40, 1, ""}, {AttackKind::Gaussian, 1, false, 80.0, 40, 2, ""},
      {AttackKind::Gaussian, 1, true, 50.0, 40, 1, ""},  {AttackKind::Gaussian, 1, true, 52.0, 40, 2, ""},
      {AttackKind::Zeroing, 10, false, 99.0, 20, std::nullopt, ""},
      {AttackKind::Zeroing, 10, true, std::nullopt, 0, std::nullopt, "x"},
  };
  const std::string md = format_markdown(rows);
  CHECK(md.starts_with("# Robustness report\n"));
  CHECK(md.find("| UNAUTHENTICATION | | AUTHENTICATION | |") != std::string::npos);
  CHECK(md.find("| 1 | 75.00% | 1 | 51.00% |") != std::string::npos);
  CHECK(md.find("| 10 | 99.00% | 10 | ERROR |") != std::string::npos);
  CHECK(md.find("## ") < md.find("gaussian") + md.size());
}

TEST_CASE("gaussian trials use consecutive seeds") {
  ExperimentGrid grid = reference_grid(kKey);
  grid.attacks = {{AttackKind::Gaussian, {2}}};
  grid.modes = {false};
  grid.trials = 3;
  grid.seed = 40;
  const auto rows = run_grid(grid, random_image(64, 64, 1), random_watermark(16, 16, 2));
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].seed == 40);
  CHECK(*rows[2].seed == 42);
}

TEST_CASE("a failing row is marked and the run continues") {
  ExperimentGrid grid = reference_grid(kKey);
  grid.attacks = {{AttackKind::Zeroing, {8, 100}}, {AttackKind::Rotation, {5}}};
  const auto rows = run_grid(grid, random_image(32, 32, 1), random_watermark(16, 16, 2));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].similarity_pct);
  CHECK_FALSE(rows[2].similarity_pct);  // 100 > 32
  CHECK_FALSE(rows[2].error.empty());
  CHECK(rows[4].similarity_pct);
  CHECK(format_csv(rows).find("zeroing,100,false,ERROR,ERROR,") != std::string::npos);
}

TEST_CASE("artifacts reproduce the reported similarity") {
  const fs::path dir = fresh_dir("chaosmark_artifacts_test");
  ExperimentGrid grid = reference_grid(kKey);
  grid.attacks = {{AttackKind::Rotation, {10}}, {AttackKind::Gaussian, {2}}};
  grid.seed = 5;
  const Watermark wm = random_watermark(20, 20, 3);
  const auto rows = run_grid(grid, random_image(48, 48, 9), wm, dir);
  CHECK(fs::exists(dir / "carrier.pgm"));
  CHECK(fs::exists(dir / "watermark.pbm"));
  CHECK(fs::exists(dir / "watermarked_auth.pgm"));
  CHECK(fs::exists(dir / "watermarked_unauth.pgm"));
  for (const auto& row : rows) {
    const std::string stem = artifact_stem(row);
    const Watermark extracted = load_pbm(dir / ("extracted_" + stem + ".pbm"));
    CHECK(similarity(load_pbm(dir / "watermark.pbm"), extracted).percentage == *row.similarity_pct);
    SecretKey key = kKey;
    key.authenticated = row.authenticated;
    const GrayImage attacked = load_pgm(dir / ("attacked_" + stem + ".pgm"));
    CHECK(extract(attacked, key, {}, {20, 20}) == extracted);
  }
  fs::remove_all(dir);
}

TEST_CASE("grid config parsing") {
  const std::string key = "[key]\nmu=3.99\nu0=0.3183\nburn_in=100\nmix_iters=800\nauthenticated=false\n";
  const auto grid = parse_grid(key +
                                   "[run]\ncarrier=c.pgm\nmodes=authenticated\ntrials=4\nseed=9\n"
                                   "embed_mode=negate\ncollision_policy=overwrite\nmsc_mask=f8\nlsc_mask=06\n"
                                   "[attack]\nkind=zeroing\nparameters=4,8\nanchor=top-left\n"
                                   "[attack]\nkind=jpeg\nparameters=3\nscaling=linear\n"
                                   "[attack]\nkind=rotation\nparameters=1\ninterpolation=bilinear\n",
                               "/base");
  CHECK(grid.key.mix_iters == 800);
  CHECK(*grid.carrier == fs::path("/base/c.pgm"));
  CHECK_FALSE(grid.watermark);
  CHECK(grid.modes == std::vector<bool>{true});
  CHECK(grid.trials == 4);
  CHECK(grid.seed == 9);
  CHECK(grid.embed.mode == EmbedMode::Negate);
  CHECK(grid.embed.collision_policy == CollisionPolicy::Overwrite);
  CHECK(grid.embed.layout.msc_mask == 0xF8);
  CHECK(grid.embed.layout.lsc_mask == 0x06);
  REQUIRE(grid.attacks.size() == 3);
  CHECK(grid.attacks[0].anchor == Anchor::TopLeft);
  CHECK(grid.attacks[0].parameters == std::vector<double>{4, 8});
  CHECK(grid.attacks[1].jpeg_scaling == JpegScaling::Linear);
  CHECK(grid.attacks[2].interpolation == Interpolation::Bilinear);

  const std::string one = "[attack]\nkind=zeroing\nparameters=1\n";
  CHECK_THROWS_AS(parse_grid(one), ParseError);                                   // no [key]
  CHECK_THROWS_AS(parse_grid(key + "[attack]\nkind=blur\nparameters=1\n"), ParseError);
  CHECK_THROWS_AS(parse_grid(key + "[attack]\nkind=zeroing\n"), ParseError);
  CHECK_THROWS_AS(parse_grid(key + one + "[extra]\n"), ParseError);
  CHECK_THROWS_AS(parse_grid(key + "[run]\ncolour=1\n" + one), ParseError);
  CHECK_THROWS_AS(parse_grid(key + "[run]\nmodes=sometimes\n" + one), ParseError);
  CHECK_THROWS_AS(parse_grid(key + "[run]\nmsc_mask=zz\n" + one), ParseError);
  CHECK_THROWS_AS(parse_grid(key + "[run]\nmsc_mask=f0\nlsc_mask=18\n" + one), ParseError);
  CHECK_THROWS_AS(parse_grid(key), ParseError);  // no attacks
}

TEST_CASE("shipped grid config loads") {
  const auto grid = load_grid(fs::path(CHAOSMARK_DATA_DIR) / "reference_grid.cfg");
  CHECK(grid.attacks.size() == 4);
  CHECK(grid.seed == 7);
  CHECK(fs::exists(*grid.carrier));
  CHECK(fs::exists(*grid.watermark));
}
