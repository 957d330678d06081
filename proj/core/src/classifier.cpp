#include "bog/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "bog/error.hpp"
#include "bog/parallel.hpp"
#include "bog/rng.hpp"

namespace bog {

// --- GenreSet ---------------------------------------------------------------

GenreSet::GenreSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw InvalidInput("a genre set needs at least two genres");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InvalidInput("genre names must be non-empty");
    if (!seen.insert(l).second) throw InvalidInput("duplicate genre name '" + l + "'");
  }
}

std::optional<GenreIndex> GenreSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == name) return static_cast<GenreIndex>(i);
  }
  return std::nullopt;
}

GenreIndex GenreSet::index_of(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw InvalidInput("unknown genre '" + std::string(name) + "'");
}

// --- configuration and invariants -------------------------------------------

void TrainConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C must be a positive finite number");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (frames_per_genre < 1) throw ConfigError("frames_per_genre must be >= 1");
}

void LinearModel::validate() const {
  const std::size_t G = genres.size();
  if (G < 2) throw InvalidInput("model needs at least two genres");
  if (feature_dim == 0) throw InvalidInput("model feature dimension is zero");
  if (means.size() != feature_dim || scales.size() != feature_dim ||
      weights.size() != G * feature_dim || biases.size() != G) {
    throw InvalidInput("model arrays do not match G x D");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(means.begin(), means.end(), finite) ||
      !std::all_of(weights.begin(), weights.end(), finite) ||
      !std::all_of(biases.begin(), biases.end(), finite)) {
    throw InvalidInput("model contains non-finite values");
  }
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("model scales must be positive");
  }
}

// --- sampling ---------------------------------------------------------------

TrainSplit sample_training_frames(std::span<const LabeledFeature> pool, std::size_t genre_count,
                                  int frames_per_genre, std::uint64_t seed) {
  if (pool.empty()) throw InvalidInput("cannot sample from an empty frame pool");
  if (frames_per_genre < 1) throw InvalidInput("frames per genre must be >= 1");

  std::vector<std::vector<std::size_t>> by_genre(genre_count);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const GenreIndex g = pool[i].genre;
    if (g >= genre_count) {
      throw InvalidInput("frame " + std::to_string(i) + " has genre index " + std::to_string(g) +
                         " outside [0," + std::to_string(genre_count) + ")");
    }
    by_genre[g].push_back(i);
  }

  TrainSplit split;
  std::vector<bool> chosen(pool.size(), false);
  const auto want = static_cast<std::size_t>(frames_per_genre);
  for (std::size_t g = 0; g < genre_count; ++g) {
    auto& ids = by_genre[g];
    if (ids.empty()) {
      throw InvalidInput("genre " + std::to_string(g) + " has no frames in the pool");
    }
    if (ids.size() < want) {
      split.warnings.push_back("genre " + std::to_string(g) + " has only " +
                               std::to_string(ids.size()) + " frames (< N=" +
                               std::to_string(want) + "); using all of them");
    }
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    Rng rng(derive_seed(seed, g));
    const std::size_t k = std::min(want, ids.size());
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
      std::swap(ids[i], ids[j]);
      chosen[ids[i]] = true;
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (chosen[i] ? split.train : split.held_out).push_back(i);
  }
  return split;
}

// --- standardisation --------------------------------------------------------

Standardization standardize_fit(std::span<const LabeledFeature> train) {
  if (train.empty()) throw InvalidInput("cannot standardise an empty training set");
  const std::size_t D = train.front().feature.size();
  Standardization st{std::vector<double>(D, 0.0), std::vector<double>(D, 0.0)};
  for (const auto& lf : train) {
    if (lf.feature.size() != D) throw InvalidInput("training features differ in dimension");
    for (std::size_t d = 0; d < D; ++d) st.means[d] += lf.feature.values[d];
  }
  const double n = static_cast<double>(train.size());
  for (double& m : st.means) m /= n;
  for (const auto& lf : train) {
    for (std::size_t d = 0; d < D; ++d) {
      const double dev = lf.feature.values[d] - st.means[d];
      st.scales[d] += dev * dev;
    }
  }
  for (double& s : st.scales) {
    s = std::sqrt(s / n);
    if (!(s > 0.0)) s = 1.0;
  }
  return st;
}

// --- training ---------------------------------------------------------------

namespace {

// Rows are standardised features with a trailing constant 1 for the bias.
struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
  std::vector<double> sq_norms;

  std::span<const double> row(std::size_t i) const {
    return std::span(data).subspan(i * cols, cols);
  }
};

DesignMatrix build_design(std::span<const LabeledFeature> train, const Standardization& st) {
  const std::size_t D = st.means.size();
  DesignMatrix X{train.size(), D + 1, std::vector<double>(train.size() * (D + 1)),
                 std::vector<double>(train.size())};
  for (std::size_t i = 0; i < train.size(); ++i) {
    double* out = X.data.data() + i * X.cols;
    double sq = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
      out[d] = (train[i].feature.values[d] - st.means[d]) / st.scales[d];
      sq += out[d] * out[d];
    }
    out[D] = 1.0;
    X.sq_norms[i] = sq + 1.0;
  }
  return X;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double binary_objective(const DesignMatrix& X, std::span<const double> y,
                        std::span<const double> w, double C) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < X.rows; ++i) {
    hinge += std::max(0.0, 1.0 - y[i] * dot(w, X.row(i)));
  }
  return 0.5 * dot(w, w) + C * hinge;
}

// Pegasos with step 1/(lambda t), lambda = 1/(C n), and projection onto the
// ball of radius 1/sqrt(lambda). w is kept as scale * v so the shrink step
// is O(1).
std::vector<double> solve_binary(const DesignMatrix& X, std::span<const double> y,
                                 const TrainConfig& cfg, std::uint64_t stream,
                                 std::vector<double>& objective_per_epoch) {
  const std::size_t n = X.rows;
  const double lambda = 1.0 / (cfg.C * static_cast<double>(n));
  const double radius_sq = 1.0 / lambda;

  std::vector<double> v(X.cols, 0.0);
  double scale = 1.0;
  double v_sq = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(cfg.seed, stream));

  auto fold_scale = [&] {
    for (double& x : v) x *= scale;
    v_sq *= scale * scale;
    scale = 1.0;
  };

  std::uint64_t t = 0;
  std::vector<double> w(X.cols);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto x = X.row(i);
      const double vx = dot(v, x);
      const double margin = y[i] * scale * vx;

      if (t == 1) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
        v_sq = 0.0;
      } else {
        scale *= 1.0 - 1.0 / static_cast<double>(t);
      }

      if (margin < 1.0) {
        const double a = eta * y[i] / scale;
        const double cur_vx = t == 1 ? 0.0 : vx;
        for (std::size_t d = 0; d < X.cols; ++d) v[d] += a * x[d];
        v_sq += 2.0 * a * cur_vx + a * a * X.sq_norms[i];
      }

      const double w_sq = scale * scale * v_sq;
      if (w_sq > radius_sq) scale *= std::sqrt(radius_sq / w_sq);
      if (scale < 1e-9) fold_scale();
    }
    for (std::size_t d = 0; d < X.cols; ++d) w[d] = scale * v[d];
    objective_per_epoch.push_back(binary_objective(X, y, w, cfg.C));
  }
  return w;
}

}  // namespace

TrainResult train_with_report(std::span<const LabeledFeature> train, const GenreSet& genres,
                              const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw InvalidInput("training set is empty");
  const std::size_t G = genres.size();
  if (G < 2) throw InvalidInput("genre set needs at least two genres");
  const DescriptorKind kind = train.front().feature.descriptor;
  const std::size_t D = train.front().feature.size();
  if (D == 0) throw InvalidInput("training features are empty");

  std::vector<std::size_t> per_genre(G, 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& lf = train[i];
    if (lf.feature.descriptor != kind || lf.feature.size() != D) {
      throw InvalidInput("training frame " + std::to_string(i) +
                         " does not match descriptor/dimension of frame 0");
    }
    if (lf.genre >= G) throw InvalidInput("training label out of range");
    ++per_genre[lf.genre];
  }
  for (std::size_t g = 0; g < G; ++g) {
    if (per_genre[g] == 0) {
      throw InvalidInput("genre '" + genres.name(static_cast<GenreIndex>(g)) +
                         "' has no training frames; the dictionary must cover every genre");
    }
  }

  const Standardization st = standardize_fit(train);
  const DesignMatrix X = build_design(train, st);

  TrainResult result;
  LinearModel& m = result.model;
  m.genres = genres;
  m.descriptor = kind;
  m.feature_dim = D;
  m.means = st.means;
  m.scales = st.scales;
  m.weights.assign(G * D, 0.0);
  m.biases.assign(G, 0.0);
  result.objective.assign(G, {});

  parallel_for(G, cfg.jobs, [&](std::size_t g) {
    std::vector<double> y(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) y[i] = train[i].genre == g ? 1.0 : -1.0;
    const auto w = solve_binary(X, y, cfg, g, result.objective[g]);
    std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(D),
              m.weights.begin() + static_cast<std::ptrdiff_t>(g * D));
    m.biases[g] = w[D];
  });
  return result;
}

LinearModel train(std::span<const LabeledFeature> train, const GenreSet& genres,
                  const TrainConfig& cfg) {
  return train_with_report(train, genres, cfg).model;
}

// --- inference --------------------------------------------------------------

std::vector<double> decision_scores(const LinearModel& model, const FeatureVector& feature) {
  if (feature.descriptor != model.descriptor) {
    throw InvalidInput("feature descriptor " + std::string(descriptor_name(feature.descriptor)) +
                       " does not match model descriptor " +
                       std::string(descriptor_name(model.descriptor)));
  }
  if (feature.size() != model.feature_dim) {
    throw InvalidInput("feature dimension " + std::to_string(feature.size()) +
                       " does not match model dimension " + std::to_string(model.feature_dim));
  }
  const std::size_t D = model.feature_dim;
  std::vector<double> z(D);
  for (std::size_t d = 0; d < D; ++d) {
    z[d] = (feature.values[d] - model.means[d]) / model.scales[d];
  }
  std::vector<double> scores(model.genre_count());
  for (std::size_t g = 0; g < scores.size(); ++g) {
    scores[g] = dot(model.row(static_cast<GenreIndex>(g)), z) + model.biases[g];
  }
  return scores;
}

GenreIndex predict(const LinearModel& model, const FeatureVector& feature) {
  const auto scores = decision_scores(model, feature);
  std::size_t best = 0;
  for (std::size_t g = 1; g < scores.size(); ++g) {
    if (scores[g] > scores[best]) best = g;
  }
  return static_cast<GenreIndex>(best);
}

double evaluate_accuracy(const LinearModel& model, std::span<const LabeledFeature> test) {
  if (test.empty()) throw InvalidInput("cannot evaluate accuracy on an empty test set");
  std::size_t hits = 0;
  for (const auto& lf : test) {
    if (predict(model, lf.feature) == lf.genre) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

}  // namespace bog
