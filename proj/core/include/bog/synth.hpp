#pragma once

// Synthetic genre-coded video frames for desk-scale end-to-end runs.
//
// Each genre owns a dominant colour at the centre of a quantisation bin.
// A frame is that colour plus a per-video tint, a per-frame shift, per-pixel
// jitter, salt pixels and a few in-bin rectangles; the amount of each scales
// with `noise`. With probability noise^2 a frame borrows another genre's
// colour, modelling the mixed-content videos that make frame labels noisy.
// At noise 0 every frame of a genre has the same quantised histogram.

#include <cstdint>
#include <filesystem>

#include "bog/dataset.hpp"
#include "bog/image.hpp"

namespace bog {

struct SynthSpec {
  int genres = 6;
  int videos_per_genre = 20;
  int frames_per_video = 20;
  double noise = 0.1;
  std::uint64_t seed = 0;
  int width = 64;
  int height = 48;
  /// Fraction of each genre's videos assigned to the train split.
  double train_fraction = 0.36;

  /// Throws InvalidInput on non-positive counts, noise outside [0,1], or
  /// more genres than the palette holds (64).
  void validate() const;
};

/// Dominant colour of genre g.
Rgb genre_color(int g);

std::string synth_genre_name(int g);
std::string synth_video_id(int genre, int video);

/// Pure function of (spec, genre, video, frame).
Image synthesize_frame(const SynthSpec& spec, int genre, int video, int frame);

/// Manifest of the dataset without touching the filesystem; frame_dir
/// values are relative (`frames/<video_id>`).
DatasetManifest synth_manifest(const SynthSpec& spec);

/// Writes out_dir/manifest.csv and out_dir/frames/<video_id>/frame_NNNNN.png.
/// Refuses a non-empty out_dir unless `force`, in which case only the
/// manifest and frames/ tree are replaced.
DatasetManifest write_synthetic_dataset(const SynthSpec& spec, const std::filesystem::path& out_dir,
                                        bool force = false, unsigned jobs = 1);

}  // namespace bog
