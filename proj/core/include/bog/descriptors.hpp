#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bog/image.hpp"

namespace bog {

/// Frame-level descriptors. The numeric values are part of the on-disk
/// formats (feature cache, model file) and must not be reordered.
enum class DescriptorKind : std::uint8_t {
  ACC = 0,  ///< auto colour correlogram
  CCV = 1,  ///< colour coherence vector
  BIC = 2,  ///< border/interior pixel classification
  GCH = 3,  ///< global colour histogram
  GFD = 4,  ///< generic Fourier descriptor
  HWD = 5,  ///< Haar wavelet descriptor
};

inline constexpr std::array<DescriptorKind, 6> kAllDescriptors = {
    DescriptorKind::ACC, DescriptorKind::CCV, DescriptorKind::BIC,
    DescriptorKind::GCH, DescriptorKind::GFD, DescriptorKind::HWD};

std::string_view descriptor_name(DescriptorKind kind);
/// Case-insensitive; throws ConfigError on unknown names.
DescriptorKind parse_descriptor(std::string_view name);
/// Throws FormatError for bytes outside the enum.
DescriptorKind descriptor_from_byte(std::uint8_t value);

struct FeatureVector {
  DescriptorKind descriptor = DescriptorKind::GCH;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct DescriptorConfig {
  int gch_bins_per_channel = 4;
  int bic_bins_per_channel = 4;
  int ccv_bins_per_channel = 4;
  double ccv_tau_fraction = 0.01;
  std::vector<int> acc_distances = {1, 3, 5, 7};
  int acc_bins_per_channel = 4;
  int gfd_radial = 4;
  int gfd_angular = 9;
  int gfd_resize = 64;
  // Polar raster resolution sampled before the transform.
  int gfd_polar_radii = 64;
  int gfd_polar_angles = 64;
  int hwd_levels = 3;
  int hwd_resize = 64;

  /// Throws ConfigError when any field is out of range.
  void validate() const;

  friend bool operator==(const DescriptorConfig&, const DescriptorConfig&) = default;
};

/// Output length of `kind` under `cfg`.
std::size_t descriptor_length(DescriptorKind kind, const DescriptorConfig& cfg);

/// Uniform per-channel quantisation: floor(v * bins / 256) per channel,
/// combined as (qr * bins + qg) * bins + qb.
inline int quantize(const Rgb& p, int bins) noexcept {
  const int qr = p.r * bins / 256;
  const int qg = p.g * bins / 256;
  const int qb = p.b * bins / 256;
  return (qr * bins + qg) * bins + qb;
}

FeatureVector extract_gch(const Image& img, const DescriptorConfig& cfg);
FeatureVector extract_bic(const Image& img, const DescriptorConfig& cfg);
FeatureVector extract_ccv(const Image& img, const DescriptorConfig& cfg);
FeatureVector extract_acc(const Image& img, const DescriptorConfig& cfg);
FeatureVector extract_gfd(const Image& img, const DescriptorConfig& cfg);
FeatureVector extract_hwd(const Image& img, const DescriptorConfig& cfg);

/// Dispatches to the extractor for `which`.
FeatureVector extract(const Image& img, DescriptorKind which, const DescriptorConfig& cfg);

}  // namespace bog
