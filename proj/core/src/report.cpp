#include "bog/report.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "bog/error.hpp"
#include "bog/text.hpp"

namespace bog {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

EvalReport per_genre_report(std::span<const std::vector<RankedList>> runs,
                            const RelevanceJudge& judge, std::size_t genre_count, std::size_t k,
                            double level) {
  if (runs.empty()) throw InvalidInput("per_genre_report needs at least one replication");
  EvalReport rep;
  rep.k = k;
  rep.level = level;

  std::map<GenreIndex, std::pair<double, double>> genre_sums;
  std::map<GenreIndex, std::size_t> genre_counts;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    double ap_sum = 0.0, pk_sum = 0.0;
    std::size_t scored = 0;
    for (const auto& list : runs[r]) {
      const GenreIndex g = judge.genre_of(list.query_id);
      double ap = 0.0;
      try {
        ap = average_precision(list, judge, g);
      } catch (const InvalidInput&) {
        rep.warnings.push_back("replication " + std::to_string(r) + ": query '" + list.query_id +
                               "' has no other video of its genre; excluded");
        continue;
      }
      const double pk = precision_at_k(list, judge, g, k);
      ap_sum += ap;
      pk_sum += pk;
      ++scored;
      genre_sums[g].first += ap;
      genre_sums[g].second += pk;
      ++genre_counts[g];
    }
    if (scored == 0) {
      rep.warnings.push_back("replication " + std::to_string(r) + " has no scorable query");
      continue;
    }
    rep.per_replication_map.push_back(ap_sum / static_cast<double>(scored));
    rep.per_replication_p10.push_back(pk_sum / static_cast<double>(scored));
  }

  rep.replication_count = rep.per_replication_map.size();
  if (rep.replication_count == 0) throw InvalidInput("no replication produced a scorable query");
  if (rep.replication_count >= 2) {
    rep.map_ci = aggregate_replications(rep.per_replication_map, level);
    rep.p10_ci = aggregate_replications(rep.per_replication_p10, level);
  } else {
    const double m = rep.per_replication_map.front();
    const double p = rep.per_replication_p10.front();
    rep.map_ci = {m, m, m};
    rep.p10_ci = {p, p, p};
    rep.warnings.push_back("single replication: confidence intervals are degenerate");
  }
  rep.map_mean = rep.map_ci.mean;
  rep.p10_mean = rep.p10_ci.mean;

  for (std::size_t g = 0; g < genre_count; ++g) {
    const auto gi = static_cast<GenreIndex>(g);
    const auto it = genre_counts.find(gi);
    if (it == genre_counts.end()) {
      rep.warnings.push_back("genre " + std::to_string(g) + " has no scored query; omitted");
      continue;
    }
    const double n = static_cast<double>(it->second);
    rep.per_genre[gi] = {genre_sums[gi].first / n, genre_sums[gi].second / n, it->second};
  }
  return rep;
}

namespace {

const std::string& name_for(const std::vector<std::string>& names, GenreIndex g) {
  if (g >= names.size()) throw InvalidInput("genre index has no name");
  return names[g];
}

}  // namespace

std::string report_to_json(const EvalReport& report, const std::vector<std::string>& genre_names,
                           std::string_view config_hash_hex) {
  nlohmann::ordered_json j;
  if (!config_hash_hex.empty()) j["config_hash"] = std::string(config_hash_hex);
  j["k"] = report.k;
  j["confidence_level"] = report.level;
  j["replication_count"] = report.replication_count;
  j["map"] = {{"mean", report.map_mean}, {"ci_lo", report.map_ci.lo}, {"ci_hi", report.map_ci.hi},
              {"half_width", report.map_ci.half_width()}};
  j["p_at_k"] = {{"mean", report.p10_mean},
                 {"ci_lo", report.p10_ci.lo},
                 {"ci_hi", report.p10_ci.hi},
                 {"half_width", report.p10_ci.half_width()}};
  j["per_replication"] = {{"map", report.per_replication_map},
                          {"p_at_k", report.per_replication_p10}};
  auto genres = nlohmann::ordered_json::array();
  for (const auto& [g, s] : report.per_genre) {
    genres.push_back({{"genre", name_for(genre_names, g)},
                      {"map", s.map},
                      {"p_at_k", s.p_at_k},
                      {"queries", s.queries}});
  }
  j["per_genre"] = std::move(genres);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& report, const std::vector<std::string>& genre_names,
                          std::string_view config_hash_hex) {
  const bool with_hash = !config_hash_hex.empty();
  const std::string tail = with_hash ? "," + std::string(config_hash_hex) : "";
  std::ostringstream os;
  os << "genre,map,p10,queries,map_ci_lo,map_ci_hi,p10_ci_lo,p10_ci_hi"
     << (with_hash ? ",config_hash" : "") << '\n';
  for (const auto& [g, s] : report.per_genre) {
    os << name_for(genre_names, g) << ',' << format_double(s.map) << ','
       << format_double(s.p_at_k) << ',' << s.queries << ",,,," << tail << '\n';
  }
  std::size_t total_queries = 0;
  for (const auto& [g, s] : report.per_genre) total_queries += s.queries;
  os << "overall," << format_double(report.map_mean) << ',' << format_double(report.p10_mean)
     << ',' << total_queries << ',' << format_double(report.map_ci.lo) << ','
     << format_double(report.map_ci.hi) << ',' << format_double(report.p10_ci.lo) << ','
     << format_double(report.p10_ci.hi) << tail << '\n';
  return os.str();
}

std::map<std::string, GenreScore> read_per_class_csv(std::string_view csv_text) {
  const auto lines = split_lines(csv_text);
  if (lines.empty()) throw FormatError("per-class CSV is empty");
  const auto header = split_csv_line(lines.front());
  if (header.size() < 3 || header[0] != "genre" || header[1] != "map" || header[2] != "p10") {
    throw FormatError("per-class CSV must start with header genre,map,p10");
  }
  std::map<std::string, GenreScore> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split_csv_line(lines[i]);
    if (cells.size() < 3) {
      throw FormatError("per-class CSV line " + std::to_string(i + 1) + " has fewer than 3 cells");
    }
    if (cells[0] == "overall") continue;
    GenreScore s;
    s.map = parse_double(cells[1], "map on line " + std::to_string(i + 1));
    s.p_at_k = parse_double(cells[2], "p10 on line " + std::to_string(i + 1));
    if (!out.emplace(cells[0], s).second) {
      throw FormatError("duplicate class '" + cells[0] + "' in per-class CSV");
    }
  }
  return out;
}

SystemComparison compare_systems(const std::map<std::string, GenreScore>& a,
                                 const std::map<std::string, GenreScore>& b, std::string name_a,
                                 std::string name_b, double level) {
  SystemComparison cmp;
  std::vector<double> map_a, map_b, p_a, p_b;
  for (const auto& [cls, sa] : a) {
    const auto it = b.find(cls);
    if (it == b.end()) continue;
    cmp.classes.push_back(cls);
    map_a.push_back(sa.map);
    map_b.push_back(it->second.map);
    p_a.push_back(sa.p_at_k);
    p_b.push_back(it->second.p_at_k);
  }
  if (cmp.classes.size() < 2) {
    throw InvalidInput("systems share fewer than two classes; nothing to pair");
  }
  cmp.map = paired_diff_interval(map_a, map_b, level, name_a, name_b, Metric::MAP);
  cmp.p10 = paired_diff_interval(p_a, p_b, level, name_a, name_b, Metric::P10);
  return cmp;
}

std::string comparisons_to_markdown(std::span<const SystemComparison> rows, double level) {
  auto fmt3 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  auto verdict = [](const PairedDiffInterval& d) -> std::string {
    if (!d.significant) return "not significant";
    return d.hi < 0.0 ? d.system_b + " better" : d.system_a + " better";
  };
  std::ostringstream os;
  os << "Paired differences, " << format_double(level * 100.0) << "% confidence intervals\n\n";
  os << "| Approach | MAP min. | MAP max. | MAP | P10 min. | P10 max. | P10 |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    os << "| " << r.map.system_a << " - " << r.map.system_b << " | " << fmt3(r.map.lo) << " | "
       << fmt3(r.map.hi) << " | " << verdict(r.map) << " | " << fmt3(r.p10.lo) << " | "
       << fmt3(r.p10.hi) << " | " << verdict(r.p10) << " |\n";
  }
  return os.str();
}

}  // namespace bog
