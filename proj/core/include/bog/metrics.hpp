#pragma once

#include <map>
#include <span>
#include <string>

#include "bog/retrieval.hpp"

namespace bog {

/// Genre-match relevance: a result is relevant iff its genre equals the
/// query's.
class RelevanceJudge {
 public:
  RelevanceJudge() = default;
  explicit RelevanceJudge(std::map<std::string, GenreIndex> genre_of)
      : genre_of_(std::move(genre_of)) {}
  static RelevanceJudge from_corpus(std::span<const BoGVector> corpus);

  /// Throws InvalidInput for ids the judge has never seen.
  GenreIndex genre_of(const std::string& video_id) const;
  bool relevant(const std::string& video_id, GenreIndex query_genre) const {
    return genre_of(video_id) == query_genre;
  }
  std::size_t size() const noexcept { return genre_of_.size(); }

 private:
  std::map<std::string, GenreIndex> genre_of_;
};

/// AP over the full list; R is the number of relevant entries in the list.
/// Throws InvalidInput when the list holds no relevant entry.
double average_precision(const RankedList& ranked, const RelevanceJudge& judge,
                         GenreIndex query_genre);

/// Relevant entries among the first min(k, size) divided by k.
double precision_at_k(const RankedList& ranked, const RelevanceJudge& judge,
                      GenreIndex query_genre, std::size_t k = 10);

}  // namespace bog
