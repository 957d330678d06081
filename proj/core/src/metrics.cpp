#include "bog/metrics.hpp"

#include <algorithm>

#include "bog/error.hpp"

namespace bog {

RelevanceJudge RelevanceJudge::from_corpus(std::span<const BoGVector> corpus) {
  std::map<std::string, GenreIndex> m;
  for (const auto& v : corpus) m.emplace(v.video_id, v.genre);
  return RelevanceJudge(std::move(m));
}

GenreIndex RelevanceJudge::genre_of(const std::string& video_id) const {
  const auto it = genre_of_.find(video_id);
  if (it == genre_of_.end()) {
    throw InvalidInput("no relevance judgement for video '" + video_id + "'");
  }
  return it->second;
}

double average_precision(const RankedList& ranked, const RelevanceJudge& judge,
                         GenreIndex query_genre) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    if (judge.relevant(ranked.entries[i].video_id, query_genre)) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  if (hits == 0) {
    throw InvalidInput("query '" + ranked.query_id + "' has no relevant items in its ranked list");
  }
  return sum / static_cast<double>(hits);
}

double precision_at_k(const RankedList& ranked, const RelevanceJudge& judge,
                      GenreIndex query_genre, std::size_t k) {
  if (k == 0) throw InvalidInput("precision_at_k requires k >= 1");
  const std::size_t depth = std::min(k, ranked.entries.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (judge.relevant(ranked.entries[i].video_id, query_genre)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

}  // namespace bog
