#include <doctest.h>

#include <filesystem>

#include "chaosmark/errors.hpp"
#include "chaosmark/keyfile.hpp"

using namespace chaosmark;

TEST_CASE("key text round trip keeps full precision") {
  const SecretKey key{3.99, 0.31830988618379069, 100, 8192, false};
  const std::string text = format_key(key);
  CHECK(text == "mu=3.99\nu0=0.3183098861837907\nburn_in=100\nmix_iters=8192\nauthenticated=false\n");
  CHECK(parse_key(text) == key);

  SecretKey odd{3.7000000000000002, 0.1 + 0.2, 7, 3, true};
  CHECK(parse_key(format_key(odd)) == odd);
}

TEST_CASE("key files tolerate comments and blank lines") {
  const auto key = parse_key("# secret\n\n mu = 3.9 \nu0=0.123\r\nburn_in=0\nmix_iters=5\nauthenticated=true\n");
  CHECK(key.mu == 3.9);
  CHECK(key.u0 == 0.123);
  CHECK(key.burn_in == 0);
  CHECK(key.authenticated);
}

TEST_CASE("key file errors") {
  const std::string good = "mu=3.99\nu0=0.3\nburn_in=1\nmix_iters=5\nauthenticated=false\n";
  CHECK_NOTHROW(parse_key(good));
  auto kind = [](const std::string& text) {
    try {
      parse_key(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    return ParseError::Kind::Io;
  };
  CHECK(kind(good + "colour=blue\n") == ParseError::Kind::UnknownField);
  CHECK(kind("mu=3.99\nu0=0.3\nburn_in=1\nmix_iters=5\n") == ParseError::Kind::MissingField);
  CHECK(kind("mu=abc\nu0=0.3\nburn_in=1\nmix_iters=5\nauthenticated=false\n") == ParseError::Kind::BadValue);
  CHECK(kind("mu=3.99\nu0=0.3\nburn_in=-1\nmix_iters=5\nauthenticated=false\n") == ParseError::Kind::BadValue);
  CHECK(kind("mu=3.99\nu0=0.3\nburn_in=1\nmix_iters=5\nauthenticated=yes\n") == ParseError::Kind::BadValue);
  CHECK(kind(good + "mu=3.9\n") == ParseError::Kind::BadValue);
  CHECK(kind("just text\n") == ParseError::Kind::MalformedHeader);
  CHECK_THROWS_AS(parse_key("mu=2.0\nu0=0.3\nburn_in=1\nmix_iters=5\nauthenticated=false\n"), PreconditionError);
  CHECK_THROWS_AS(parse_key("mu=3.9\nu0=0.5\nburn_in=1\nmix_iters=5\nauthenticated=false\n"), PreconditionError);
}

TEST_CASE("sectioned config parsing") {
  const auto sections = parse_sections("[a]\nx=1\n[b]\ny = two words\n[a]\nx=3\n");
  REQUIRE(sections.size() == 3);
  CHECK(sections[0].name == "a");
  CHECK(sections[1].find("y")->value == "two words");
  CHECK(sections[2].find("x")->value == "3");
  CHECK_THROWS_AS(parse_sections("[broken\n"), ParseError);
}

TEST_CASE("real lists") {
  const ConfigEntry e{"parameters", "10, 50,100", 0};
  CHECK(parse_real_list(e) == std::vector<double>{10, 50, 100});
  CHECK_THROWS_AS(parse_real_list(ConfigEntry{"p", "1,,2", 0}), ParseError);
}

TEST_CASE("key files on disk") {
  const auto path = std::filesystem::temp_directory_path() / "chaosmark_key_test.key";
  const SecretKey key{3.99, 0.3183, 100, 8192, false};
  save_key(key, path);
  CHECK(load_key(path) == key);
  std::filesystem::remove(path);
}
