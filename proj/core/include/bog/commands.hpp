#pragma once

// The pipeline stages behind the `bogctl` subcommands. Each stage reads its
// inputs from disk, writes its outputs (plus the resolved configuration as
// INI) into an output directory and returns a summary for callers and tests.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bog/dataset.hpp"
#include "bog/report.hpp"
#include "bog/run_config.hpp"
#include "bog/synth.hpp"

namespace bog {

/// Canonical output file names.
std::string cache_file_name(Split split, DescriptorKind d);
std::string model_file_name(DescriptorKind d, int frames_per_genre);
std::string bog_file_name(Split split, DescriptorKind d);

// --- extract ----------------------------------------------------------------

struct FrameError {
  std::string video_id;
  std::filesystem::path frame;
  std::string message;
};

struct ExtractOptions {
  std::filesystem::path manifest;
  RunConfig config;
  std::filesystem::path output_dir;
  std::vector<Split> splits = {Split::Train, Split::Test};
  std::ostream* log = nullptr;
};

struct ExtractResult {
  std::vector<std::filesystem::path> caches;
  std::size_t extracted = 0;
  std::size_t skipped = 0;  ///< already cached with a matching hash
  std::vector<FrameError> errors;
  double frames_per_second = 0.0;
};

/// Resumable: an existing cache with the same configuration hash is
/// extended, one with a different hash is refused (InvalidInput).
ExtractResult cmd_extract(const ExtractOptions& opts);

// --- train ------------------------------------------------------------------

struct TrainOptions {
  std::filesystem::path cache;       ///< train-split feature cache
  std::filesystem::path test_cache;  ///< optional; test-split accuracy is skipped when empty
  std::filesystem::path manifest;
  RunConfig config;
  std::filesystem::path output_dir;
  bool sweep = false;  ///< train one model per config.sweep value
  std::ostream* log = nullptr;
};

struct TrainRow {
  int frames_per_genre = 0;
  std::size_t train_frames = 0;
  std::optional<double> heldout_accuracy;
  std::optional<double> test_accuracy;
  std::filesystem::path model_path;
  std::vector<std::string> warnings;
};

struct TrainOutcome {
  std::vector<TrainRow> rows;
  std::filesystem::path accuracy_csv;
};

TrainOutcome cmd_train(const TrainOptions& opts);

// --- encode -----------------------------------------------------------------

struct EncodeOptions {
  std::filesystem::path cache;
  std::filesystem::path model;
  std::filesystem::path manifest;
  RunConfig config;
  std::filesystem::path output_dir;
  Split split = Split::Test;
  std::ostream* log = nullptr;
};

struct EncodeResult {
  BogFile bog;
  std::vector<EncodeError> errors;
  std::filesystem::path path;
};

/// Throws InvalidInput naming both sides when the model was trained on a
/// different descriptor or feature configuration than the cache holds.
EncodeResult cmd_encode(const EncodeOptions& opts);

// --- evaluate / compare -----------------------------------------------------

struct EvaluateOptions {
  std::filesystem::path bog;
  std::filesystem::path manifest;  ///< optional cross-check of ids and genres
  RunConfig config;
  std::filesystem::path output_dir;
  /// Further BoG files evaluated under the same plan seeds and compared
  /// pairwise against `bog`.
  std::vector<std::filesystem::path> compare;
  std::ostream* log = nullptr;
};

struct EvaluateResult {
  EvalReport report;
  ConfigHash config_hash{};
  std::size_t bog_bins = 0;
  double reduction = 0.0;  ///< 1 - bog_bins / reference_bins
  std::vector<SystemComparison> comparisons;
};

EvaluateResult cmd_evaluate(const EvaluateOptions& opts);

struct NamedScores {
  std::string name;
  std::filesystem::path csv;
};

/// Compares the first system against every other one and writes the
/// Markdown table to `output`.
std::vector<SystemComparison> cmd_compare(const std::vector<NamedScores>& systems, double level,
                                          const std::filesystem::path& output);

// --- synth ------------------------------------------------------------------

DatasetManifest cmd_synth(const SynthSpec& spec, const std::filesystem::path& output_dir,
                          bool force, unsigned jobs = 1);

}  // namespace bog
