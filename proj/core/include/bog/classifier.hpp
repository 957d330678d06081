#pragma once

// Linear one-vs-rest genre classifier. Its decision regions form the
// dictionary of genres used to code frames.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bog/descriptors.hpp"

namespace bog {

using GenreIndex = std::uint32_t;
using ConfigHash = std::array<std::uint8_t, 32>;

/// Ordered, duplicate-free genre names. Index positions are stable.
class GenreSet {
 public:
  GenreSet() = default;
  /// Throws InvalidInput on duplicates or fewer than two genres.
  explicit GenreSet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& name(GenreIndex g) const { return labels_.at(g); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<GenreIndex> find(std::string_view name) const;
  /// Throws InvalidInput for unknown names.
  GenreIndex index_of(std::string_view name) const;

  friend bool operator==(const GenreSet&, const GenreSet&) = default;

 private:
  std::vector<std::string> labels_;
};

struct LabeledFeature {
  FeatureVector feature;
  GenreIndex genre = 0;
};

struct TrainConfig {
  double C = 1.0;
  int epochs = 20;
  std::uint64_t seed = 0;
  int frames_per_genre = 100;
  unsigned jobs = 1;  ///< threads for the one-vs-rest subproblems; 0 = all cores

  void validate() const;
};

struct Standardization {
  std::vector<double> means;
  std::vector<double> scales;
};

struct LinearModel {
  GenreSet genres;
  DescriptorKind descriptor = DescriptorKind::GCH;
  std::size_t feature_dim = 0;
  std::vector<double> means;    ///< feature_dim
  std::vector<double> scales;   ///< feature_dim, strictly positive
  std::vector<double> weights;  ///< genres.size() x feature_dim, row-major
  std::vector<double> biases;   ///< genres.size()
  ConfigHash feature_hash{};    ///< hash of the feature configuration it was trained on
  ConfigHash config_hash{};     ///< hash of the full training configuration

  std::size_t genre_count() const noexcept { return genres.size(); }
  std::span<const double> row(GenreIndex g) const {
    return std::span(weights).subspan(static_cast<std::size_t>(g) * feature_dim, feature_dim);
  }
  /// Throws InvalidInput when shapes or values break the model invariants.
  void validate() const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct TrainSplit {
  std::vector<std::size_t> train;     ///< indices into the pool, ascending
  std::vector<std::size_t> held_out;  ///< complement, ascending
  std::vector<std::string> warnings;
};

/// Draws min(N, available) frames per genre without replacement.
/// Throws InvalidInput if the pool is empty, a label is out of range, or a
/// genre in [0, genre_count) has no frames.
TrainSplit sample_training_frames(std::span<const LabeledFeature> pool, std::size_t genre_count,
                                  int frames_per_genre, std::uint64_t seed);

/// Per-dimension mean and population standard deviation; zero-variance
/// dimensions get scale 1.
Standardization standardize_fit(std::span<const LabeledFeature> train);

struct TrainResult {
  LinearModel model;
  /// objective[g][e]: regularised hinge objective of genre g's binary
  /// problem after epoch e + 1.
  std::vector<std::vector<double>> objective;
};

/// One-vs-rest primal subgradient (Pegasos) SVM on standardised features.
TrainResult train_with_report(std::span<const LabeledFeature> train, const GenreSet& genres,
                              const TrainConfig& cfg);
LinearModel train(std::span<const LabeledFeature> train, const GenreSet& genres,
                  const TrainConfig& cfg);

/// w_g . standardize(x) + b_g for every genre.
std::vector<double> decision_scores(const LinearModel& model, const FeatureVector& feature);
/// Argmax of decision_scores; ties go to the lowest genre index.
GenreIndex predict(const LinearModel& model, const FeatureVector& feature);
double evaluate_accuracy(const LinearModel& model, std::span<const LabeledFeature> test);

std::vector<std::uint8_t> serialize_model(const LinearModel& model);
LinearModel deserialize_model(std::span<const std::uint8_t> bytes);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace bog
