#include "chaosmark/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "chaosmark/errors.hpp"

namespace chaosmark {

namespace {

using Kind = ParseError::Kind;

// Tokenizer over the header and plain-format payloads. Comments run from '#'
// to the end of the line.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::span<const std::uint8_t> rest() const noexcept { return bytes_.subspan(pos_); }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  void skip_space() {
    while (!at_end()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string magic() {
    if (remaining() < 2 || bytes_[0] != 'P') {
      throw ParseError(Kind::BadMagic, 0, "not a netpbm file");
    }
    pos_ = 2;
    return std::string{static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
  }

  // Unsigned decimal header field.
  unsigned long number(const char* what, Kind on_missing = Kind::MalformedHeader) {
    skip_space();
    const std::size_t start = pos_;
    if (at_end()) {
      throw ParseError(on_missing, start, std::string("missing ") + what);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw ParseError(on_missing == Kind::TruncatedPayload ? Kind::BadPixel : on_missing, start,
                       std::string("expected digits for ") + what);
    }
    unsigned long value = 0;
    while (!at_end() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw ParseError(on_missing == Kind::TruncatedPayload ? Kind::BadPixel : Kind::MalformedHeader, start,
                         std::string(what) + " out of range");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from a raw payload.
  void header_terminator() {
    if (at_end() || !std::isspace(bytes_[pos_])) {
      throw ParseError(Kind::MalformedHeader, pos_, "expected whitespace after header");
    }
    ++pos_;
  }

  // Plain PBM digits may be packed without separators.
  std::uint8_t bit() {
    skip_space();
    if (at_end()) throw ParseError(Kind::TruncatedPayload, pos_, "plain bitmap ends early");
    const auto c = bytes_[pos_];
    if (c != '0' && c != '1') throw ParseError(Kind::BadPixel, pos_, "expected 0 or 1");
    ++pos_;
    return c == '1' ? 1 : 0;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::pair<int, int> dimensions(Reader& r) {
  const auto width = r.number("width");
  const auto height = r.number("height");
  if (width == 0 || height == 0) {
    throw ParseError(Kind::MalformedHeader, r.offset(), "zero dimension");
  }
  return {static_cast<int>(width), static_cast<int>(height)};
}

std::string header(const char* magic, int width, int height) {
  return std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
}

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const std::string magic = r.magic();
  if (magic != "P5" && magic != "P2") {
    throw ParseError(Kind::BadMagic, 0, "expected P5 or P2, got " + magic);
  }
  const auto [width, height] = dimensions(r);
  const std::size_t maxval_at = (r.skip_space(), r.offset());
  const auto maxval = r.number("maxval");
  if (maxval != 255) {
    throw ParseError(Kind::MaxvalUnsupported, maxval_at, "maxval " + std::to_string(maxval) + " (only 255)");
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels(count);
  if (magic == "P5") {
    r.header_terminator();
    if (r.remaining() < count) {
      throw ParseError(Kind::TruncatedPayload, bytes.size(),
                       "need " + std::to_string(count) + " bytes, have " + std::to_string(r.remaining()));
    }
    std::copy_n(r.rest().begin(), count, pixels.begin());
  } else {
    for (auto& p : pixels) {
      const std::size_t at = (r.skip_space(), r.offset());
      const auto v = r.number("pixel", Kind::TruncatedPayload);
      if (v > 255) throw ParseError(Kind::BadPixel, at, "intensity " + std::to_string(v) + " > 255");
      p = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(width, height, pixels);
}

Bytes encode_pgm(const GrayImage& image) {
  const std::string head = header("P5", image.width(), image.height()) + "255\n";
  Bytes out(head.begin(), head.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

Watermark parse_pbm(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const std::string magic = r.magic();
  if (magic != "P4" && magic != "P1") {
    throw ParseError(Kind::BadMagic, 0, "expected P4 or P1, got " + magic);
  }
  const auto [width, height] = dimensions(r);
  BitVector bits(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  if (magic == "P4") {
    r.header_terminator();
    const std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
    const std::size_t need = stride * static_cast<std::size_t>(height);
    if (r.remaining() < need) {
      throw ParseError(Kind::TruncatedPayload, bytes.size(),
                       "need " + std::to_string(need) + " bytes, have " + std::to_string(r.remaining()));
    }
    const auto payload = r.rest();
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const auto byte = payload[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x) / 8];
        bits[static_cast<std::size_t>(y) * width + x] = (byte >> (7 - x % 8)) & 1u;
      }
    }
  } else {
    for (auto& b : bits) b = r.bit();
  }
  return Watermark(width, height, std::move(bits));
}

Bytes encode_pbm(const Watermark& watermark, PbmEncoding encoding) {
  const int width = watermark.width();
  const int height = watermark.height();
  if (encoding == PbmEncoding::Plain) {
    std::string text = header("P1", width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (x) text += ' ';
        text += watermark(y, x) ? '1' : '0';
      }
      text += '\n';
    }
    return Bytes(text.begin(), text.end());
  }
  const std::string head = header("P4", width, height);
  Bytes out(head.begin(), head.end());
  const std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
  const std::size_t start = out.size();
  out.resize(start + stride * static_cast<std::size_t>(height), 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (watermark(y, x)) {
        out[start + static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x) / 8] |=
            static_cast<std::uint8_t>(0x80u >> (x % 8));
      }
    }
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(Kind::Io, 0, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

GrayImage load_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

void save_pgm(const GrayImage& image, const std::filesystem::path& path) { write_file(path, encode_pgm(image)); }

Watermark load_pbm(const std::filesystem::path& path) { return parse_pbm(read_file(path)); }

void save_pbm(const Watermark& watermark, const std::filesystem::path& path, PbmEncoding encoding) {
  write_file(path, encode_pbm(watermark, encoding));
}

}  // namespace chaosmark
