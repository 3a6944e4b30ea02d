#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "chaosmark/bitplane.hpp"

namespace chaosmark {

using Bytes = std::vector<std::uint8_t>;

// Grayscale maps: P5 (raw) and P2 (plain), maxval 255 only.
GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
/// Canonical P5: "P5\n<w> <h>\n255\n" followed by the raw pixels.
Bytes encode_pgm(const GrayImage& image);

// Bitmaps: P4 (packed) and P1 (plain). 1 = black = true.
enum class PbmEncoding { Packed, Plain };
Watermark parse_pbm(std::span<const std::uint8_t> bytes);
Bytes encode_pbm(const Watermark& watermark, PbmEncoding encoding = PbmEncoding::Packed);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

Watermark load_pbm(const std::filesystem::path& path);
void save_pbm(const Watermark& watermark, const std::filesystem::path& path,
              PbmEncoding encoding = PbmEncoding::Packed);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace chaosmark
