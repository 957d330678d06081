#pragma once

// On-disk artefacts of the pipeline: the dataset manifest, the feature
// cache and the BoG file.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bog/classifier.hpp"
#include "bog/encoder.hpp"

namespace bog {

enum class Split { Train, Test };

std::string_view split_name(Split s);
Split parse_split(std::string_view s);

struct ManifestEntry {
  std::string video_id;
  GenreIndex genre = 0;
  Split split = Split::Train;
  std::filesystem::path frame_dir;  ///< absolute, or relative to the manifest
};

/// CSV with header `video_id,genre,split,frame_dir`. Genre indices follow
/// order of first appearance.
struct DatasetManifest {
  GenreSet genres;
  std::vector<ManifestEntry> videos;

  std::vector<const ManifestEntry*> in_split(Split s) const;
  const ManifestEntry* find(std::string_view video_id) const;
};

/// Parses manifest text. Relative frame_dir values are resolved against
/// `base_dir`. When `require_dirs` is set every frame_dir must exist.
DatasetManifest parse_manifest(std::string_view csv_text, const std::filesystem::path& base_dir,
                               bool require_dirs = true);
DatasetManifest load_manifest(const std::filesystem::path& path, bool require_dirs = true);
/// Writes frame_dir values relative to the manifest's directory when possible.
std::string manifest_to_csv(const DatasetManifest& manifest, const std::filesystem::path& base_dir);

/// Decodable frame images (.png, .jpg, .jpeg) in lexicographic order; the
/// position in this list is the frame index.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& frame_dir);

// --- feature cache ----------------------------------------------------------

using FrameKey = std::pair<std::string, std::uint32_t>;

struct FeatureCache {
  DescriptorKind descriptor = DescriptorKind::GCH;
  std::uint32_t dim = 0;
  ConfigHash config_hash{};
  std::map<FrameKey, std::vector<double>> entries;

  /// Throws InvalidInput on a length mismatch.
  void insert(const std::string& video_id, std::uint32_t frame, std::vector<double> values);
  /// Frames of one video in frame-index order.
  std::vector<FeatureVector> frames_of(const std::string& video_id) const;

  friend bool operator==(const FeatureCache&, const FeatureCache&) = default;
};

std::vector<std::uint8_t> serialize_feature_cache(const FeatureCache& cache);
FeatureCache deserialize_feature_cache(std::span<const std::uint8_t> bytes);
void save_feature_cache(const FeatureCache& cache, const std::filesystem::path& path);
FeatureCache load_feature_cache(const std::filesystem::path& path);

// --- BoG file -----------------------------------------------------------------

struct BogFile {
  ConfigHash config_hash{};
  std::vector<std::string> genre_names;
  std::vector<BoGVector> vectors;

  friend bool operator==(const BogFile&, const BogFile&) = default;
};

std::vector<std::uint8_t> serialize_bog_file(const BogFile& file);
BogFile deserialize_bog_file(std::span<const std::uint8_t> bytes);
void save_bog_file(const BogFile& file, const std::filesystem::path& path);
BogFile load_bog_file(const std::filesystem::path& path);
/// `video_id,g0,...,g{G-1},config_hash` header followed by one row per video.
std::string bog_to_csv(const BogFile& file);

}  // namespace bog
