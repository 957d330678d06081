#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bog/encoder.hpp"

namespace bog {

struct RankedEntry {
  std::string video_id;
  double distance = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankedList {
  std::string query_id;
  std::vector<RankedEntry> entries;  ///< ascending distance, ties by video_id

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

double l2_distance(std::span<const double> a, std::span<const double> b);
double l2_distance(const BoGVector& a, const BoGVector& b);

/// Ranks `corpus` minus any entry whose id equals the query's.
RankedList rank(const BoGVector& query, std::span<const BoGVector> corpus);

enum class QueryRounding { Nearest, Floor, Ceil };

/// max(1, rounding(fraction * genre_size)).
std::size_t queries_for_genre(std::size_t genre_size, double fraction,
                              QueryRounding rounding = QueryRounding::Nearest);

struct Replication {
  std::uint64_t seed = 0;
  std::map<GenreIndex, std::vector<std::string>> queries;

  friend bool operator==(const Replication&, const Replication&) = default;
};

struct QueryPlan {
  double fraction = 0.05;
  std::vector<Replication> replications;

  friend bool operator==(const QueryPlan&, const QueryPlan&) = default;
};

/// For every seed and every genre in [0, genre_count), picks query ids
/// uniformly without replacement. Throws InvalidInput if a genre is empty.
QueryPlan build_query_plan(std::span<const BoGVector> corpus, std::size_t genre_count,
                           double fraction, std::span<const std::uint64_t> seeds,
                           QueryRounding rounding = QueryRounding::Nearest);

/// One RankedList per planned query, grouped by replication index. Queries
/// within a replication follow ascending genre then selection order.
std::vector<std::vector<RankedList>> run_retrieval(const QueryPlan& plan,
                                                   std::span<const BoGVector> corpus,
                                                   unsigned jobs = 1);

/// TREC run lines: `query_id Q0 video_id rank distance run_tag`, rank from 1.
std::string to_trec_run(std::span<const RankedList> lists, std::string_view run_tag);

}  // namespace bog
