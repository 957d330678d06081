#include "bog/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "bog/error.hpp"

namespace bog {

std::string_view descriptor_name(DescriptorKind kind) {
  switch (kind) {
    case DescriptorKind::ACC: return "ACC";
    case DescriptorKind::CCV: return "CCV";
    case DescriptorKind::BIC: return "BIC";
    case DescriptorKind::GCH: return "GCH";
    case DescriptorKind::GFD: return "GFD";
    case DescriptorKind::HWD: return "HWD";
  }
  return "?";
}

DescriptorKind parse_descriptor(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (DescriptorKind k : kAllDescriptors) {
    if (descriptor_name(k) == upper) return k;
  }
  throw ConfigError("unknown descriptor '" + std::string(name) +
                    "' (expected one of ACC, CCV, BIC, GCH, GFD, HWD)");
}

DescriptorKind descriptor_from_byte(std::uint8_t value) {
  if (value > static_cast<std::uint8_t>(DescriptorKind::HWD)) {
    throw FormatError("invalid descriptor tag " + std::to_string(value));
  }
  return static_cast<DescriptorKind>(value);
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
  int k = 0;
  while ((1 << k) < v) ++k;
  return k;
}

}  // namespace

void DescriptorConfig::validate() const {
  auto bins_ok = [](int b) { return b >= 1 && b <= 256; };
  require(bins_ok(gch_bins_per_channel), "gch_bins_per_channel must be in [1,256]");
  require(bins_ok(bic_bins_per_channel), "bic_bins_per_channel must be in [1,256]");
  require(bins_ok(ccv_bins_per_channel), "ccv_bins_per_channel must be in [1,256]");
  require(bins_ok(acc_bins_per_channel), "acc_bins_per_channel must be in [1,256]");
  require(ccv_tau_fraction > 0.0 && ccv_tau_fraction < 1.0, "ccv_tau_fraction must be in (0,1)");
  require(!acc_distances.empty(), "acc_distances must not be empty");
  for (int d : acc_distances) require(d >= 1, "acc_distances entries must be >= 1");
  require(gfd_radial >= 1 && gfd_angular >= 1, "gfd_radial and gfd_angular must be >= 1");
  require(gfd_resize >= 1, "gfd_resize must be >= 1");
  require(gfd_polar_radii >= gfd_radial, "gfd_polar_radii must be >= gfd_radial");
  require(gfd_polar_angles >= gfd_angular, "gfd_polar_angles must be >= gfd_angular");
  require(is_power_of_two(hwd_resize), "hwd_resize must be a power of two");
  require(hwd_levels >= 1, "hwd_levels must be >= 1");
  require(hwd_levels <= log2_exact(hwd_resize), "hwd_levels exceeds log2(hwd_resize)");
}

std::size_t descriptor_length(DescriptorKind kind, const DescriptorConfig& cfg) {
  auto cube = [](int b) { return static_cast<std::size_t>(b) * b * b; };
  switch (kind) {
    case DescriptorKind::ACC: return cube(cfg.acc_bins_per_channel) * cfg.acc_distances.size();
    case DescriptorKind::CCV: return 2 * cube(cfg.ccv_bins_per_channel);
    case DescriptorKind::BIC: return 2 * cube(cfg.bic_bins_per_channel);
    case DescriptorKind::GCH: return cube(cfg.gch_bins_per_channel);
    case DescriptorKind::GFD: return static_cast<std::size_t>(cfg.gfd_radial) * cfg.gfd_angular;
    case DescriptorKind::HWD: return 3 * static_cast<std::size_t>(cfg.hwd_levels) + 1;
  }
  return 0;
}

FeatureVector extract(const Image& img, DescriptorKind which, const DescriptorConfig& cfg) {
  switch (which) {
    case DescriptorKind::ACC: return extract_acc(img, cfg);
    case DescriptorKind::CCV: return extract_ccv(img, cfg);
    case DescriptorKind::BIC: return extract_bic(img, cfg);
    case DescriptorKind::GCH: return extract_gch(img, cfg);
    case DescriptorKind::GFD: return extract_gfd(img, cfg);
    case DescriptorKind::HWD: return extract_hwd(img, cfg);
  }
  throw InvalidInput("unknown descriptor");
}

}  // namespace bog
