#pragma once

// Reference implementations written straight from the definitions, kept
// deliberately naive and independent of the library code they check.

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "bog/image.hpp"
#include "bog/rng.hpp"

namespace oracle {

inline bog::Image random_image(bog::Rng& rng, int w, int h, int palette = 0) {
  // palette > 0 restricts pixels to that many random colours so that
  // connected regions of equal quantised colour actually occur.
  std::vector<bog::Rgb> colours;
  for (int i = 0; i < palette; ++i) {
    colours.push_back({static_cast<std::uint8_t>(rng.below(256)),
                       static_cast<std::uint8_t>(rng.below(256)),
                       static_cast<std::uint8_t>(rng.below(256))});
  }
  bog::Image img(w, h);
  for (auto& p : img.pixels()) {
    if (palette > 0) {
      p = colours[rng.below(colours.size())];
    } else {
      p = {static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
           static_cast<std::uint8_t>(rng.below(256))};
    }
  }
  return img;
}

inline int colour_index(const bog::Rgb& p, int bins) {
  const double width = 256.0 / bins;
  const int r = static_cast<int>(std::floor(p.r / width));
  const int g = static_cast<int>(std::floor(p.g / width));
  const int b = static_cast<int>(std::floor(p.b / width));
  return r * bins * bins + g * bins + b;
}

inline std::vector<double> gch(const bog::Image& img, int bins) {
  std::map<int, long> counts;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) ++counts[colour_index(img.at(x, y), bins)];
  }
  std::vector<double> h(static_cast<std::size_t>(bins) * bins * bins, 0.0);
  for (auto [c, n] : counts) h[static_cast<std::size_t>(c)] = static_cast<double>(n) / static_cast<double>(img.area());
  return h;
}

/// Border flags per pixel by direct neighbour inspection.
inline std::vector<bool> bic_border(const bog::Image& img, int bins) {
  std::vector<bool> border;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int c = colour_index(img.at(x, y), bins);
      bool is_border = false;
      const int dx[] = {1, -1, 0, 0};
      const int dy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k], ny = y + dy[k];
        if (img.contains(nx, ny) && colour_index(img.at(nx, ny), bins) != c) is_border = true;
      }
      border.push_back(is_border);
    }
  }
  return border;
}

inline std::vector<double> bic(const bog::Image& img, int bins) {
  const std::size_t colours = static_cast<std::size_t>(bins) * bins * bins;
  std::vector<double> out(2 * colours, 0.0);
  const auto border = bic_border(img, bins);
  std::size_t i = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x, ++i) {
      const auto c = static_cast<std::size_t>(colour_index(img.at(x, y), bins));
      out[(border[i] ? 0 : colours) + c] += 1.0 / static_cast<double>(img.area());
    }
  }
  return out;
}

/// CCV through breadth-first flood fill.
inline std::vector<double> ccv(const bog::Image& img, int bins, double tau_fraction) {
  const int w = img.width(), h = img.height();
  const std::size_t colours = static_cast<std::size_t>(bins) * bins * bins;
  const auto tau = static_cast<long>(std::ceil(tau_fraction * w * h));
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::vector<double> out(2 * colours, 0.0);
  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      if (label[static_cast<std::size_t>(sy) * w + sx] >= 0) continue;
      const int c = colour_index(img.at(sx, sy), bins);
      std::deque<std::pair<int, int>> queue{{sx, sy}};
      label[static_cast<std::size_t>(sy) * w + sx] = 1;
      long size = 0;
      while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        ++size;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (!img.contains(nx, ny)) continue;
            auto& l = label[static_cast<std::size_t>(ny) * w + nx];
            if (l < 0 && colour_index(img.at(nx, ny), bins) == c) {
              l = 1;
              queue.emplace_back(nx, ny);
            }
          }
        }
      }
      const std::size_t slot = (size >= tau ? 0 : colours) + static_cast<std::size_t>(c);
      out[slot] += static_cast<double>(size) / static_cast<double>(w * h);
    }
  }
  return out;
}

/// Autocorrelogram by enumerating every ordered pixel pair.
inline std::vector<double> acc(const bog::Image& img, int bins, const std::vector<int>& distances) {
  const std::size_t colours = static_cast<std::size_t>(bins) * bins * bins;
  std::vector<double> out(colours * distances.size(), 0.0);
  for (std::size_t k = 0; k < distances.size(); ++k) {
    std::vector<double> same(colours, 0.0), total(colours, 0.0);
    for (int y1 = 0; y1 < img.height(); ++y1) {
      for (int x1 = 0; x1 < img.width(); ++x1) {
        const auto c = static_cast<std::size_t>(colour_index(img.at(x1, y1), bins));
        for (int y2 = 0; y2 < img.height(); ++y2) {
          for (int x2 = 0; x2 < img.width(); ++x2) {
            if (std::max(std::abs(x1 - x2), std::abs(y1 - y2)) != distances[k]) continue;
            total[c] += 1.0;
            if (static_cast<std::size_t>(colour_index(img.at(x2, y2), bins)) == c) same[c] += 1.0;
          }
        }
      }
    }
    for (std::size_t c = 0; c < colours; ++c) {
      if (total[c] > 0.0) out[k * colours + c] = same[c] / total[c];
    }
  }
  return out;
}

/// Mean |horizontal detail| of one averaging Haar step, computed as the mean
/// of (top row pair sum - bottom row pair sum) / 4 over 2x2 blocks.
inline double haar_level1_horizontal(const bog::GrayImage& g) {
  double sum = 0.0;
  long n = 0;
  for (int y = 0; y + 1 < g.height; y += 2) {
    for (int x = 0; x + 1 < g.width; x += 2) {
      const double top = g(x, y) + g(x + 1, y);
      const double bottom = g(x, y + 1) + g(x + 1, y + 1);
      sum += std::fabs(top - bottom) / 4.0;
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

/// AP recomputed from scratch at every relevant rank.
inline double average_precision(const std::vector<bool>& rel) {
  double r = 0.0;
  for (bool b : rel) r += b ? 1.0 : 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < rel.size(); ++k) {
    if (!rel[k]) continue;
    double hits = 0.0;
    for (std::size_t j = 0; j <= k; ++j) hits += rel[j] ? 1.0 : 0.0;
    sum += hits / static_cast<double>(k + 1);
  }
  return sum / r;
}

inline double precision_at_k(const std::vector<bool>& rel, std::size_t k) {
  double hits = 0.0;
  for (std::size_t i = 0; i < rel.size() && i < k; ++i) hits += rel[i] ? 1.0 : 0.0;
  return hits / static_cast<double>(k);
}

inline double t_quantile(double p, double df) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), p);
}

struct Interval {
  double mean, lo, hi;
};

/// Two-pass mean and sample standard deviation, Boost.Math t quantile.
inline Interval t_interval(const std::vector<double>& v, double level) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double s = std::sqrt(ss / (n - 1.0));
  const double half = t_quantile(0.5 + level / 2.0, n - 1.0) * s / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

}  // namespace oracle
