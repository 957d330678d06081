#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bog/classifier.hpp"
#include "bog/descriptors.hpp"
#include "bog/retrieval.hpp"

namespace bog {

/// Every experiment constant for one pipeline run. Loaded from an INI-style
/// file with [features], [train] and [evaluate] sections; every key is
/// optional and defaults to the values below.
struct RunConfig {
  DescriptorKind descriptor = DescriptorKind::GCH;
  DescriptorConfig features;
  TrainConfig train;
  /// N values trained by `train --sweep`.
  std::vector<int> sweep = {100, 500, 800};
  bool evaluate_test_frames = true;
  double query_fraction = 0.05;
  QueryRounding query_rounding = QueryRounding::Nearest;
  std::vector<std::uint64_t> replication_seeds = {1, 2, 3, 4, 5};
  std::size_t k = 10;
  double confidence_level = 0.99;
  /// Size of the representation the BoG is compared against in the
  /// compactness line of the report.
  std::size_t reference_bins = 100;
  unsigned jobs = 1;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  /// Applies a --seed override: train.seed = seed and the replication seeds
  /// become seed+1 .. seed+R.
  void apply_seed(std::uint64_t seed);
};

RunConfig parse_run_config(std::string_view ini_text);
RunConfig load_run_config(const std::filesystem::path& path);
/// Round-trips through parse_run_config.
std::string to_ini(const RunConfig& cfg);

/// Canonical key=value text of the configuration that determines extracted
/// features (descriptor + its parameters).
std::string feature_canonical(const RunConfig& cfg);
/// Canonical text of feature + training parameters for a given N.
std::string training_canonical(const RunConfig& cfg, int frames_per_genre);
/// Canonical text of the evaluation protocol.
std::string evaluation_canonical(const RunConfig& cfg);

/// SHA-256 digest.
ConfigHash sha256(std::string_view text);

}  // namespace bog
