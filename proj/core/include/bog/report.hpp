#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bog/metrics.hpp"
#include "bog/statistics.hpp"

namespace bog {

struct GenreScore {
  double map = 0.0;
  double p_at_k = 0.0;
  std::size_t queries = 0;
};

struct EvalReport {
  std::size_t k = 10;
  double level = 0.99;
  double map_mean = 0.0;
  ConfidenceInterval map_ci;
  double p10_mean = 0.0;
  ConfidenceInterval p10_ci;
  std::size_t replication_count = 0;
  std::vector<double> per_replication_map;
  std::vector<double> per_replication_p10;
  /// Pooled over every valid query of the genre across replications.
  std::map<GenreIndex, GenreScore> per_genre;
  std::vector<std::string> warnings;
};

/// Scores every ranked list and aggregates. runs[r] holds replication r.
/// Queries with no relevant item are skipped with a warning; genres in
/// [0, genre_count) with no scored query are omitted with a warning.
EvalReport per_genre_report(std::span<const std::vector<RankedList>> runs,
                            const RelevanceJudge& judge, std::size_t genre_count,
                            std::size_t k = 10, double level = 0.99);

std::string report_to_json(const EvalReport& report, const std::vector<std::string>& genre_names,
                           std::string_view config_hash_hex = {});
/// One row per genre plus an `overall` row carrying the intervals.
/// A non-empty hash adds a trailing config_hash column.
std::string report_to_csv(const EvalReport& report, const std::vector<std::string>& genre_names,
                          std::string_view config_hash_hex = {});

/// Per-class scores read back from report_to_csv output (or any CSV with a
/// `genre,map,p10` header prefix); the overall row is skipped.
std::map<std::string, GenreScore> read_per_class_csv(std::string_view csv_text);

struct SystemComparison {
  PairedDiffInterval map;
  PairedDiffInterval p10;
  std::vector<std::string> classes;  ///< pairing order
};

/// Pairs the two systems' per-class scores on their common classes. Throws
/// InvalidInput if fewer than two classes are shared.
SystemComparison compare_systems(const std::map<std::string, GenreScore>& a,
                                 const std::map<std::string, GenreScore>& b,
                                 std::string name_a, std::string name_b, double level = 0.99);

/// Markdown table: approach, MAP min/max, P10 min/max, significance.
std::string comparisons_to_markdown(std::span<const SystemComparison> rows, double level = 0.99);

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

}  // namespace bog
