#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace bog {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major RGB8 raster. A default-constructed image is empty (0x0); the
/// extractors reject it.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {});
  Image(int width, int height, std::vector<Rgb> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t area() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  const Rgb& at(int x, int y) const;
  Rgb& at(int x, int y);

  const Rgb& operator()(int x, int y) const noexcept {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  Rgb& operator()(int x, int y) noexcept {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  std::span<Rgb> pixels() noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

/// Single-channel float raster used by the texture descriptors.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double operator()(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& operator()(int x, int y) noexcept {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

/// Luma with fixed weights 0.299 r + 0.587 g + 0.114 b.
GrayImage to_gray(const Image& img);

/// Bilinear resize with pixel-centre alignment and edge clamping.
GrayImage resize_bilinear(const GrayImage& src, int width, int height);

/// Decodes a PNG or JPEG file to RGB8. Throws IoError / FormatError.
Image load_image(const std::filesystem::path& path);

/// Encodes to PNG (or any format implied by the extension).
void save_image(const Image& img, const std::filesystem::path& path);

}  // namespace bog
