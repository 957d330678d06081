#include "bog/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bog/error.hpp"

namespace bog {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw InvalidInput("image dimensions must be non-negative");
  }
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0) {
    throw InvalidInput("image dimensions must be non-negative");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidInput("pixel count " + std::to_string(pixels_.size()) +
                       " does not match " + std::to_string(width) + "x" +
                       std::to_string(height));
  }
}

const Rgb& Image::at(int x, int y) const {
  if (!contains(x, y)) throw InvalidInput("pixel access out of bounds");
  return (*this)(x, y);
}

Rgb& Image::at(int x, int y) {
  if (!contains(x, y)) throw InvalidInput("pixel access out of bounds");
  return (*this)(x, y);
}

GrayImage to_gray(const Image& img) {
  GrayImage out{img.width(), img.height(), {}};
  out.values.reserve(img.area());
  for (const Rgb& p : img.pixels()) {
    out.values.push_back(0.299 * p.r + 0.587 * p.g + 0.114 * p.b);
  }
  return out;
}

namespace {

// Source coordinate for destination index i under centre alignment, clamped
// to the valid sampling range.
struct Tap {
  int lo;
  int hi;
  double frac;
};

std::vector<Tap> make_taps(int src_len, int dst_len) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst_len));
  const double scale = static_cast<double>(src_len) / dst_len;
  for (int i = 0; i < dst_len; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, src_len - 1);
    taps[static_cast<std::size_t>(i)] = {lo, hi, s - lo};
  }
  return taps;
}

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

GrayImage resize_bilinear(const GrayImage& src, int width, int height) {
  if (src.width <= 0 || src.height <= 0 || width <= 0 || height <= 0) {
    throw InvalidInput("resize requires non-empty source and target");
  }
  if (src.width == width && src.height == height) return src;

  const auto xt = make_taps(src.width, width);
  const auto yt = make_taps(src.height, height);
  GrayImage out{width, height, std::vector<double>(static_cast<std::size_t>(width) * height)};
  for (int y = 0; y < height; ++y) {
    const Tap& ty = yt[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xt[static_cast<std::size_t>(x)];
      // a + (b - a) * t returns a exactly when a == b, so flat regions stay flat.
      const double top = lerp(src(tx.lo, ty.lo), src(tx.hi, ty.lo), tx.frac);
      const double bot = lerp(src(tx.lo, ty.hi), src(tx.hi, ty.hi), tx.frac);
      out(x, y) = lerp(top, bot, ty.frac);
    }
  }
  return out;
}

}  // namespace bog
