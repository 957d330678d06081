#include "bog/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "bog/error.hpp"
#include "bog/parallel.hpp"
#include "bog/rng.hpp"

namespace bog {

double l2_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidInput("l2_distance: dimension mismatch " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double l2_distance(const BoGVector& a, const BoGVector& b) {
  return l2_distance(a.histogram, b.histogram);
}

RankedList rank(const BoGVector& query, std::span<const BoGVector> corpus) {
  RankedList out{query.video_id, {}};
  out.entries.reserve(corpus.size());
  for (const auto& v : corpus) {
    if (v.video_id == query.video_id) continue;
    out.entries.push_back({v.video_id, l2_distance(query, v)});
  }
  if (out.entries.empty()) {
    throw InvalidInput("query '" + query.video_id + "' has nothing to rank against");
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.video_id < b.video_id;
  });
  return out;
}

std::size_t queries_for_genre(std::size_t genre_size, double fraction, QueryRounding rounding) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidInput("query fraction must be in (0,1]");
  }
  const double raw = fraction * static_cast<double>(genre_size);
  double k = 0.0;
  switch (rounding) {
    case QueryRounding::Nearest: k = std::round(raw); break;
    case QueryRounding::Floor: k = std::floor(raw); break;
    case QueryRounding::Ceil: k = std::ceil(raw); break;
  }
  return std::min(genre_size, std::max<std::size_t>(1, static_cast<std::size_t>(k)));
}

QueryPlan build_query_plan(std::span<const BoGVector> corpus, std::size_t genre_count,
                           double fraction, std::span<const std::uint64_t> seeds,
                           QueryRounding rounding) {
  if (seeds.empty()) throw InvalidInput("query plan needs at least one replication seed");
  std::vector<std::vector<std::string>> by_genre(genre_count);
  for (const auto& v : corpus) {
    if (v.genre >= genre_count) {
      throw InvalidInput("video '" + v.video_id + "' has genre index out of range");
    }
    by_genre[v.genre].push_back(v.video_id);
  }
  for (std::size_t g = 0; g < genre_count; ++g) {
    if (by_genre[g].empty()) {
      throw InvalidInput("genre " + std::to_string(g) + " has no videos to draw queries from");
    }
    std::sort(by_genre[g].begin(), by_genre[g].end());
  }

  QueryPlan plan{fraction, {}};
  for (std::uint64_t seed : seeds) {
    Replication rep{seed, {}};
    Rng rng(seed);
    for (std::size_t g = 0; g < genre_count; ++g) {
      auto ids = by_genre[g];
      const std::size_t k = queries_for_genre(ids.size(), fraction, rounding);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
        std::swap(ids[i], ids[j]);
      }
      ids.resize(k);
      rep.queries.emplace(static_cast<GenreIndex>(g), std::move(ids));
    }
    plan.replications.push_back(std::move(rep));
  }
  return plan;
}

std::vector<std::vector<RankedList>> run_retrieval(const QueryPlan& plan,
                                                   std::span<const BoGVector> corpus,
                                                   unsigned jobs) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) index.emplace(corpus[i].video_id, i);

  // Flatten (replication, query) so the pool sees one work list.
  struct Job {
    std::size_t rep;
    std::size_t slot;
    std::size_t corpus_pos;
  };
  std::vector<Job> work;
  std::vector<std::vector<RankedList>> out(plan.replications.size());
  for (std::size_t r = 0; r < plan.replications.size(); ++r) {
    for (const auto& [genre, ids] : plan.replications[r].queries) {
      for (const auto& id : ids) {
        const auto it = index.find(id);
        if (it == index.end()) {
          throw InvalidInput("query id '" + id + "' (replication " + std::to_string(r) +
                             ") is not in the corpus");
        }
        work.push_back({r, out[r].size(), it->second});
        out[r].emplace_back();
      }
    }
  }
  parallel_for(work.size(), jobs, [&](std::size_t i) {
    const Job& j = work[i];
    out[j.rep][j.slot] = rank(corpus[j.corpus_pos], corpus);
  });
  return out;
}

std::string to_trec_run(std::span<const RankedList> lists, std::string_view run_tag) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& list : lists) {
    for (std::size_t k = 0; k < list.entries.size(); ++k) {
      const auto& e = list.entries[k];
      os << list.query_id << " Q0 " << e.video_id << ' ' << (k + 1) << ' ' << e.distance << ' '
         << run_tag << '\n';
    }
  }
  return os.str();
}

}  // namespace bog
