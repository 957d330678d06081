// Histogram-family colour descriptors: GCH, BIC, CCV and the auto colour
// correlogram. All four share the uniform RGB quantisation in quantize().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bog/descriptors.hpp"
#include "bog/error.hpp"

namespace bog {
namespace {

void require_nonempty(const Image& img, std::string_view who) {
  if (img.empty()) {
    throw InvalidInput(std::string(who) + ": zero-area image");
  }
}

void require_bins(int bins, std::string_view who) {
  if (bins < 1 || bins > 256) {
    throw ConfigError(std::string(who) + ": bins per channel must be in [1,256]");
  }
}

std::vector<int> quantized(const Image& img, int bins) {
  std::vector<int> q;
  q.reserve(img.area());
  for (const Rgb& p : img.pixels()) q.push_back(quantize(p, bins));
  return q;
}

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t component_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Normalises a two-way split of each colour's count so that the halves add
// back to the GCH mass count/n bit-exactly. The larger half is the rounded
// quotient and the smaller is the remainder; since larger >= total/2 the
// subtraction is exact, and so is the re-addition.
std::vector<double> split_mass(const std::vector<std::uint64_t>& counts, std::size_t colors,
                               double n) {
  std::vector<double> out(2 * colors, 0.0);
  for (std::size_t c = 0; c < colors; ++c) {
    const std::uint64_t a = counts[c];
    const std::uint64_t b = counts[colors + c];
    const double total = static_cast<double>(a + b) / n;
    const double larger = static_cast<double>(std::max(a, b)) / n;
    out[a >= b ? c : colors + c] = larger;
    out[a >= b ? colors + c : c] = total - larger;
  }
  return out;
}

}  // namespace

FeatureVector extract_gch(const Image& img, const DescriptorConfig& cfg) {
  require_nonempty(img, "GCH");
  const int bins = cfg.gch_bins_per_channel;
  require_bins(bins, "GCH");

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins) * bins * bins, 0);
  for (const Rgb& p : img.pixels()) ++counts[static_cast<std::size_t>(quantize(p, bins))];

  FeatureVector out{DescriptorKind::GCH, std::vector<double>(counts.size())};
  const double n = static_cast<double>(img.area());
  for (std::size_t i = 0; i < counts.size(); ++i) out.values[i] = counts[i] / n;
  return out;
}

FeatureVector extract_bic(const Image& img, const DescriptorConfig& cfg) {
  require_nonempty(img, "BIC");
  const int bins = cfg.bic_bins_per_channel;
  require_bins(bins, "BIC");

  const std::size_t colors = static_cast<std::size_t>(bins) * bins * bins;
  const int w = img.width();
  const int h = img.height();
  const auto q = quantized(img, bins);

  // [0, colors) border, [colors, 2*colors) interior.
  std::vector<std::uint64_t> counts(2 * colors, 0);
  static constexpr int kDx[4] = {1, -1, 0, 0};
  static constexpr int kDy[4] = {0, 0, 1, -1};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int c = q[static_cast<std::size_t>(y) * w + x];
      bool interior = true;
      for (int k = 0; k < 4 && interior; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        interior = q[static_cast<std::size_t>(ny) * w + nx] == c;
      }
      ++counts[(interior ? colors : 0) + static_cast<std::size_t>(c)];
    }
  }

  return {DescriptorKind::BIC, split_mass(counts, colors, static_cast<double>(img.area()))};
}

FeatureVector extract_ccv(const Image& img, const DescriptorConfig& cfg) {
  require_nonempty(img, "CCV");
  const int bins = cfg.ccv_bins_per_channel;
  require_bins(bins, "CCV");
  if (!(cfg.ccv_tau_fraction > 0.0 && cfg.ccv_tau_fraction < 1.0)) {
    throw ConfigError("CCV: ccv_tau_fraction must be in (0,1)");
  }

  const std::size_t colors = static_cast<std::size_t>(bins) * bins * bins;
  const int w = img.width();
  const int h = img.height();
  const auto q = quantized(img, bins);

  // 8-connectivity: linking each pixel to its right, lower-left, lower and
  // lower-right neighbours covers every adjacent pair once.
  DisjointSet sets(img.area());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      auto link = [&](int nx, int ny) {
        if (nx < 0 || nx >= w || ny >= h) return;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (q[i] == q[j]) sets.unite(i, j);
      };
      link(x + 1, y);
      link(x - 1, y + 1);
      link(x, y + 1);
      link(x + 1, y + 1);
    }
  }

  const auto tau = static_cast<std::size_t>(
      std::ceil(cfg.ccv_tau_fraction * static_cast<double>(w) * static_cast<double>(h)));

  // [0, colors) coherent, [colors, 2*colors) incoherent.
  std::vector<std::uint64_t> counts(2 * colors, 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const bool coherent = sets.component_size(i) >= tau;
    ++counts[(coherent ? 0 : colors) + static_cast<std::size_t>(q[i])];
  }

  return {DescriptorKind::CCV, split_mass(counts, colors, static_cast<double>(img.area()))};
}

FeatureVector extract_acc(const Image& img, const DescriptorConfig& cfg) {
  require_nonempty(img, "ACC");
  const int bins = cfg.acc_bins_per_channel;
  require_bins(bins, "ACC");
  if (cfg.acc_distances.empty()) throw ConfigError("ACC: acc_distances must not be empty");
  for (int d : cfg.acc_distances) {
    if (d < 1) throw ConfigError("ACC: acc_distances entries must be >= 1");
  }

  const std::size_t colors = static_cast<std::size_t>(bins) * bins * bins;
  const int w = img.width();
  const int h = img.height();
  const auto q = quantized(img, bins);
  auto color_at = [&](int x, int y) { return q[static_cast<std::size_t>(y) * w + x]; };

  // Layout: distance-major, values[k * colors + c].
  FeatureVector out{DescriptorKind::ACC,
                    std::vector<double>(colors * cfg.acc_distances.size(), 0.0)};
  std::vector<std::uint64_t> same(colors);
  std::vector<std::uint64_t> total(colors);

  for (std::size_t k = 0; k < cfg.acc_distances.size(); ++k) {
    const int d = cfg.acc_distances[k];
    std::fill(same.begin(), same.end(), 0);
    std::fill(total.begin(), total.end(), 0);

    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int c = color_at(x, y);
        std::uint64_t hits = 0;
        std::uint64_t valid = 0;
        auto visit = [&](int nx, int ny) {
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
          ++valid;
          if (color_at(nx, ny) == c) ++hits;
        };
        // Walk the L-infinity ring of radius d: two full rows, two trimmed columns.
        for (int nx = x - d; nx <= x + d; ++nx) {
          visit(nx, y - d);
          visit(nx, y + d);
        }
        for (int ny = y - d + 1; ny <= y + d - 1; ++ny) {
          visit(x - d, ny);
          visit(x + d, ny);
        }
        same[static_cast<std::size_t>(c)] += hits;
        total[static_cast<std::size_t>(c)] += valid;
      }
    }

    for (std::size_t c = 0; c < colors; ++c) {
      if (total[c] > 0) {
        out.values[k * colors + c] =
            static_cast<double>(same[c]) / static_cast<double>(total[c]);
      }
    }
  }
  return out;
}

}  // namespace bog
