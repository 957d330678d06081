#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "bog/descriptors.hpp"
#include "bog/error.hpp"

namespace bog {
namespace {

double sample_clamped(const GrayImage& g, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(g.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(g.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, g.width - 1);
  const int y1 = std::min(y0 + 1, g.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = g(x0, y0) * (1.0 - fx) + g(x1, y0) * fx;
  const double bot = g(x0, y1) * (1.0 - fx) + g(x1, y1) * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace

FeatureVector extract_gfd(const Image& img, const DescriptorConfig& cfg) {
  if (img.empty()) throw InvalidInput("GFD: zero-area image");
  if (cfg.gfd_radial < 1 || cfg.gfd_angular < 1 || cfg.gfd_resize < 1 ||
      cfg.gfd_polar_radii < cfg.gfd_radial || cfg.gfd_polar_angles < cfg.gfd_angular) {
    throw ConfigError("GFD: invalid radial/angular/resize configuration");
  }

  const int side = cfg.gfd_resize;
  const int radial = cfg.gfd_radial;
  const int angular = cfg.gfd_angular;
  FeatureVector out{DescriptorKind::GFD,
                    std::vector<double>(static_cast<std::size_t>(radial) * angular, 0.0)};

  const GrayImage g = resize_bilinear(to_gray(img), side, side);
  double mass = 0.0, mx = 0.0, my = 0.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double v = g(x, y);
      mass += v;
      mx += v * x;
      my += v * y;
    }
  }
  if (mass <= 0.0) return out;
  const double cx = mx / mass;
  const double cy = my / mass;

  double max_radius = 0.0;
  for (double corner_x : {0.0, side - 1.0}) {
    for (double corner_y : {0.0, side - 1.0}) {
      max_radius = std::max(max_radius, std::hypot(corner_x - cx, corner_y - cy));
    }
  }

  // Polar raster f(r, i): radius r * max_radius / R, angle 2*pi*i / T.
  const int R = cfg.gfd_polar_radii;
  const int T = cfg.gfd_polar_angles;
  std::vector<double> cos_t(static_cast<std::size_t>(T)), sin_t(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / T;
    cos_t[static_cast<std::size_t>(i)] = std::cos(theta);
    sin_t[static_cast<std::size_t>(i)] = std::sin(theta);
  }
  std::vector<double> polar(static_cast<std::size_t>(R) * T);
  double polar_sum = 0.0;
  for (int r = 0; r < R; ++r) {
    const double rad = max_radius * r / R;
    for (int i = 0; i < T; ++i) {
      const double v = sample_clamped(g, cx + rad * cos_t[static_cast<std::size_t>(i)],
                                      cy + rad * sin_t[static_cast<std::size_t>(i)]);
      polar[static_cast<std::size_t>(r) * T + i] = v;
      polar_sum += v;
    }
  }

  // Separable 2-D DFT over the polar raster, restricted to the emitted band.
  std::vector<std::complex<double>> angular_dft(static_cast<std::size_t>(R) * angular);
  for (int r = 0; r < R; ++r) {
    for (int phi = 0; phi < angular; ++phi) {
      std::complex<double> acc{0.0, 0.0};
      for (int i = 0; i < T; ++i) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>((i * phi) % T) / T;
        acc += polar[static_cast<std::size_t>(r) * T + i] * std::polar(1.0, a);
      }
      angular_dft[static_cast<std::size_t>(r) * angular + phi] = acc;
    }
  }
  std::vector<double> magnitude(out.values.size());
  for (int rho = 0; rho < radial; ++rho) {
    for (int phi = 0; phi < angular; ++phi) {
      std::complex<double> acc{0.0, 0.0};
      for (int r = 0; r < R; ++r) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>((r * rho) % R) / R;
        acc += angular_dft[static_cast<std::size_t>(r) * angular + phi] * std::polar(1.0, a);
      }
      magnitude[static_cast<std::size_t>(rho) * angular + phi] = std::abs(acc);
    }
  }

  const double dc = magnitude[0];
  if (dc <= 0.0) return out;
  // DC term: mean over the polar raster relative to mean image intensity.
  const double image_mean = mass / (static_cast<double>(side) * side);
  out.values[0] = (polar_sum / (static_cast<double>(R) * T)) / image_mean;
  for (std::size_t k = 1; k < magnitude.size(); ++k) out.values[k] = magnitude[k] / dc;
  return out;
}

FeatureVector extract_hwd(const Image& img, const DescriptorConfig& cfg) {
  if (img.empty()) throw InvalidInput("HWD: zero-area image");
  const int side = cfg.hwd_resize;
  if (side < 1 || (side & (side - 1)) != 0) {
    throw ConfigError("HWD: hwd_resize must be a power of two, got " + std::to_string(side));
  }
  if (cfg.hwd_levels < 1 || (side >> (cfg.hwd_levels - 1)) < 2) {
    throw ConfigError("HWD: hwd_levels exceeds log2(hwd_resize)");
  }

  GrayImage approx = resize_bilinear(to_gray(img), side, side);
  FeatureVector out{DescriptorKind::HWD, {}};
  out.values.reserve(3 * static_cast<std::size_t>(cfg.hwd_levels) + 1);

  // Averaging Haar step on each 2x2 block [a b; c d]:
  //   A = (a+b+c+d)/4, H = (a+b-c-d)/4, V = (a-b+c-d)/4, D = (a-b-c+d)/4.
  for (int level = 0; level < cfg.hwd_levels; ++level) {
    const int n = approx.width / 2;
    GrayImage next{n, n, std::vector<double>(static_cast<std::size_t>(n) * n)};
    double sum_h = 0.0, sum_v = 0.0, sum_d = 0.0;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double a = approx(2 * x, 2 * y);
        const double b = approx(2 * x + 1, 2 * y);
        const double c = approx(2 * x, 2 * y + 1);
        const double d = approx(2 * x + 1, 2 * y + 1);
        next(x, y) = (a + b + c + d) / 4.0;
        sum_h += std::abs((a + b - c - d) / 4.0);
        sum_v += std::abs((a - b + c - d) / 4.0);
        sum_d += std::abs((a - b - c + d) / 4.0);
      }
    }
    const double count = static_cast<double>(n) * n;
    out.values.push_back(sum_h / count);
    out.values.push_back(sum_v / count);
    out.values.push_back(sum_d / count);
    approx = std::move(next);
  }

  double sum_a = 0.0;
  for (double v : approx.values) sum_a += std::abs(v);
  out.values.push_back(sum_a / static_cast<double>(approx.values.size()));
  return out;
}

}  // namespace bog
