#include "bog/encoder.hpp"

#include <optional>

#include "bog/error.hpp"
#include "bog/parallel.hpp"

namespace bog {

std::vector<double> pool_labels(std::span<const GenreIndex> labels, std::size_t genre_count) {
  if (labels.empty()) throw InvalidInput("cannot pool an empty label list");
  std::vector<std::size_t> counts(genre_count, 0);
  for (GenreIndex g : labels) {
    if (g >= genre_count) throw InvalidInput("frame label out of range");
    ++counts[g];
  }
  std::vector<double> hist(genre_count);
  const double n = static_cast<double>(labels.size());
  for (std::size_t g = 0; g < genre_count; ++g) hist[g] = static_cast<double>(counts[g]) / n;
  return hist;
}

BoGVector encode_video(const LinearModel& model, const VideoRecord& video) {
  if (video.frame_features.empty()) {
    throw InvalidInput("video '" + video.video_id + "' has no frames");
  }
  std::vector<GenreIndex> labels;
  labels.reserve(video.frame_features.size());
  for (const auto& f : video.frame_features) labels.push_back(predict(model, f));
  return BoGVector{video.video_id, video.genre, pool_labels(labels, model.genre_count()),
                   static_cast<std::uint32_t>(labels.size())};
}

EncodedCorpus encode_corpus(const LinearModel& model, std::span<const VideoRecord> videos,
                            unsigned jobs) {
  std::vector<std::optional<BoGVector>> slots(videos.size());
  std::vector<std::string> failures(videos.size());
  parallel_for(videos.size(), jobs, [&](std::size_t i) {
    try {
      slots[i] = encode_video(model, videos[i]);
    } catch (const InvalidInput& e) {
      failures[i] = e.what();
    }
  });

  EncodedCorpus out;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    if (slots[i]) {
      out.vectors.push_back(std::move(*slots[i]));
    } else {
      out.errors.push_back({videos[i].video_id, failures[i]});
    }
  }
  return out;
}

}  // namespace bog
