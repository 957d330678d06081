#pragma once

// Bag-of-Genres coding and pooling: every frame is labelled by the genre
// classifier and the labels are counted into a normalised histogram.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bog/classifier.hpp"

namespace bog {

struct VideoRecord {
  std::string video_id;
  GenreIndex genre = 0;  ///< ground truth, carried through for evaluation
  std::vector<FeatureVector> frame_features;
};

struct BoGVector {
  std::string video_id;
  GenreIndex genre = 0;
  std::vector<double> histogram;  ///< G bins, sums to 1
  std::uint32_t frame_count = 0;

  friend bool operator==(const BoGVector&, const BoGVector&) = default;
};

/// Pools already-predicted frame labels. Throws InvalidInput if `labels`
/// is empty or contains an index >= genre_count.
std::vector<double> pool_labels(std::span<const GenreIndex> labels, std::size_t genre_count);

BoGVector encode_video(const LinearModel& model, const VideoRecord& video);

struct EncodeError {
  std::string video_id;
  std::string message;
};

struct EncodedCorpus {
  std::vector<BoGVector> vectors;  ///< input order, failed videos skipped
  std::vector<EncodeError> errors;
};

/// Encodes every video; failures are reported per video and skipped.
EncodedCorpus encode_corpus(const LinearModel& model, std::span<const VideoRecord> videos,
                            unsigned jobs = 1);

inline std::size_t bog_dimensionality(const LinearModel& model) { return model.genre_count(); }

}  // namespace bog
