#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "bog/binary_io.hpp"
#include "bog/classifier.hpp"
#include "bog/error.hpp"
#include "bog/rng.hpp"

using namespace bog;

namespace {

LabeledFeature point(std::vector<double> v, GenreIndex g) {
  return {FeatureVector{DescriptorKind::GCH, std::move(v)}, g};
}

// Two clusters at (0,0) and (5,5) with +-0.1 uniform jitter.
std::vector<LabeledFeature> two_clusters(std::uint64_t seed, int per_class = 50) {
  Rng rng(seed);
  std::vector<LabeledFeature> out;
  for (int i = 0; i < per_class; ++i) {
    out.push_back(point({rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)}, 0));
    out.push_back(point({5 + rng.uniform(-0.1, 0.1), 5 + rng.uniform(-0.1, 0.1)}, 1));
  }
  return out;
}

LinearModel hand_model() {
  LinearModel m;
  m.genres = GenreSet({"a", "b"});
  m.descriptor = DescriptorKind::GCH;
  m.feature_dim = 2;
  m.means = {0, 0};
  m.scales = {1, 1};
  m.weights = {1, 0, 0, 1};
  m.biases = {0, 0};
  return m;
}

}  // namespace

TEST(GenreSet, Validation) {
  EXPECT_THROW(GenreSet({"only"}), InvalidInput);
  EXPECT_THROW(GenreSet({"a", "a"}), InvalidInput);
  EXPECT_THROW(GenreSet({"a", ""}), InvalidInput);
  const GenreSet g({"news", "sports", "music"});
  EXPECT_EQ(g.index_of("sports"), 1u);
  EXPECT_FALSE(g.find("art").has_value());
  EXPECT_THROW(g.index_of("art"), InvalidInput);
}

TEST(Sampling, CountsAndPartition) {
  std::vector<LabeledFeature> pool;
  for (GenreIndex g = 0; g < 3; ++g) {
    for (int i = 0; i < 10; ++i) pool.push_back(point({static_cast<double>(i)}, g));
  }
  const auto s = sample_training_frames(pool, 3, 2, 42);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_EQ(s.held_out.size(), 24u);
  EXPECT_TRUE(s.warnings.empty());
  std::set<std::size_t> all(s.train.begin(), s.train.end());
  all.insert(s.held_out.begin(), s.held_out.end());
  EXPECT_EQ(all.size(), pool.size());
  std::vector<int> per(3);
  for (auto i : s.train) ++per[pool[i].genre];
  EXPECT_EQ(per, (std::vector<int>{2, 2, 2}));

  const auto again = sample_training_frames(pool, 3, 2, 42);
  EXPECT_EQ(again.train, s.train);
  EXPECT_EQ(again.held_out, s.held_out);
  EXPECT_NE(sample_training_frames(pool, 3, 2, 43).train, s.train);
}

TEST(Sampling, ShortGenreWarns) {
  std::vector<LabeledFeature> pool = {point({0}, 0), point({1}, 0), point({2}, 1)};
  const auto s = sample_training_frames(pool, 2, 2, 1);
  EXPECT_EQ(s.train.size(), 3u);
  EXPECT_TRUE(s.held_out.empty());
  EXPECT_EQ(s.warnings.size(), 1u);
}

TEST(Sampling, Errors) {
  EXPECT_THROW(sample_training_frames({}, 2, 1, 0), InvalidInput);
  std::vector<LabeledFeature> pool = {point({0}, 0)};
  EXPECT_THROW(sample_training_frames(pool, 2, 1, 0), InvalidInput);
}

TEST(Sampling, FullCorpusArithmetic) {
  std::vector<LabeledFeature> pool;
  for (GenreIndex g = 0; g < 26; ++g) {
    for (int i = 0; i < 1000; ++i) pool.push_back(point({0.0}, g));
  }
  EXPECT_EQ(sample_training_frames(pool, 26, 800, 5).train.size(), 20800u);
}

TEST(Standardize, ZeroVarianceAndTwoPoints) {
  std::vector<LabeledFeature> same(5, point({3, 4}, 0));
  auto st = standardize_fit(same);
  EXPECT_EQ(st.means, (std::vector<double>{3, 4}));
  EXPECT_EQ(st.scales, (std::vector<double>{1, 1}));
  st = standardize_fit(std::vector<LabeledFeature>{point({0, 7}, 0), point({2, 7}, 1)});
  EXPECT_EQ(st.means[0], 1.0);
  EXPECT_EQ(st.scales[0], 1.0);
}

TEST(Standardize, MatchesTwoPassOracle) {
  Rng rng(2);
  std::vector<LabeledFeature> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(point({rng.normal() * 3 + 1, rng.uniform()}, 0));
  const auto st = standardize_fit(pts);
  for (std::size_t d = 0; d < 2; ++d) {
    double mean = 0;
    for (const auto& p : pts) mean += p.feature.values[d];
    mean /= 100.0;
    double var = 0;
    for (const auto& p : pts) var += (p.feature.values[d] - mean) * (p.feature.values[d] - mean);
    EXPECT_NEAR(st.means[d], mean, 1e-9);
    EXPECT_NEAR(st.scales[d], std::sqrt(var / 100.0), 1e-9);
  }
}

TEST(Predict, HandModelAndTies) {
  const LinearModel m = hand_model();
  EXPECT_EQ(predict(m, {DescriptorKind::GCH, {2, 1}}), 0u);
  EXPECT_EQ(predict(m, {DescriptorKind::GCH, {1, 2}}), 1u);
  EXPECT_EQ(predict(m, {DescriptorKind::GCH, {1, 1}}), 0u);
  EXPECT_THROW(predict(m, {DescriptorKind::GCH, {1, 1, 1}}), InvalidInput);
  EXPECT_THROW(predict(m, {DescriptorKind::HWD, {1, 1}}), InvalidInput);
}

TEST(Predict, ScalingWinningRowKeepsArgmax) {
  LinearModel m = hand_model();
  const FeatureVector f{DescriptorKind::GCH, {3, 1}};
  m.weights[0] *= 7.0;
  EXPECT_EQ(predict(m, f), 0u);
}

TEST(Train, SeparableClusters) {
  const auto data = two_clusters(1);
  const GenreSet genres({"a", "b"});
  TrainConfig cfg;
  const auto r = train_with_report(data, genres, cfg);
  EXPECT_EQ(evaluate_accuracy(r.model, data), 1.0);
  for (const auto& obj : r.objective) {
    ASSERT_EQ(obj.size(), 20u);
    EXPECT_LT(obj.back(), obj.front());
  }
  EXPECT_NO_THROW(r.model.validate());
}

TEST(Train, DeterministicAndParallelSafe) {
  const auto data = two_clusters(3);
  const GenreSet genres({"a", "b"});
  TrainConfig cfg;
  cfg.seed = 9;
  const auto a = train(data, genres, cfg);
  cfg.jobs = 2;
  const auto b = train(data, genres, cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_model(a), serialize_model(b));
  cfg.seed = 10;
  EXPECT_NE(serialize_model(train(data, genres, cfg)), serialize_model(a));
}

TEST(Train, NoSignalGivesOneOverG) {
  std::vector<LabeledFeature> data;
  for (GenreIndex g = 0; g < 4; ++g) {
    for (int i = 0; i < 10; ++i) data.push_back(point({0.5, 0.5}, g));
  }
  const auto m = train(data, GenreSet({"a", "b", "c", "d"}), TrainConfig{});
  EXPECT_DOUBLE_EQ(evaluate_accuracy(m, data), 0.25);
}

TEST(Train, Errors) {
  const GenreSet genres({"a", "b"});
  EXPECT_THROW(train({}, genres, TrainConfig{}), InvalidInput);
  std::vector<LabeledFeature> only_a = {point({1, 2}, 0)};
  EXPECT_THROW(train(only_a, genres, TrainConfig{}), InvalidInput);
  std::vector<LabeledFeature> mixed = {point({1, 2}, 0), point({1}, 1)};
  EXPECT_THROW(train(mixed, genres, TrainConfig{}), InvalidInput);
  TrainConfig bad;
  bad.C = 0;
  EXPECT_THROW(train(two_clusters(1), genres, bad), ConfigError);
  EXPECT_THROW(evaluate_accuracy(hand_model(), {}), InvalidInput);
}

TEST(Accuracy, ConstantPredictor) {
  LinearModel m;
  std::vector<std::string> names;
  for (int g = 0; g < 26; ++g) names.push_back("g" + std::to_string(g));
  m.genres = GenreSet(names);
  m.feature_dim = 1;
  m.means = {0};
  m.scales = {1};
  m.weights.assign(26, 0.0);
  m.biases.assign(26, 0.0);
  m.biases[0] = 1.0;
  std::vector<LabeledFeature> test;
  for (GenreIndex g = 0; g < 26; ++g) test.push_back(point({1.0}, g));
  EXPECT_NEAR(evaluate_accuracy(m, test), 1.0 / 26.0, 1e-15);
}

TEST(ModelIo, RoundTripPreservesPredictions) {
  const auto data = two_clusters(4);
  auto m = train(data, GenreSet({"x", "y"}), TrainConfig{});
  m.feature_hash[0] = 0xAB;
  m.config_hash[31] = 0xCD;
  const auto bytes = serialize_model(m);
  const auto back = deserialize_model(bytes);
  EXPECT_EQ(back, m);
  for (const auto& p : data) {
    EXPECT_EQ(decision_scores(back, p.feature), decision_scores(m, p.feature));
  }
}

TEST(ModelIo, CorruptInputsAreFormatErrors) {
  const auto m = train(two_clusters(5), GenreSet({"x", "y"}), TrainConfig{});
  auto bytes = serialize_model(m);
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_THROW(deserialize_model(truncated), FormatError) << cut;
  }
  auto flipped = bytes;
  flipped[20] ^= 0xFF;
  EXPECT_THROW(deserialize_model(flipped), FormatError);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize_model(bad_magic), FormatError);
}

TEST(ModelIo, DeclaredDimensionMismatch) {
  // Rewrite D (offset 4 magic + 2 version + 1 descriptor + 4 G = 11) and fix
  // the CRC so that only the size validation can object.
  const auto m = train(two_clusters(6), GenreSet({"x", "y"}), TrainConfig{});
  auto bytes = serialize_model(m);
  bytes.resize(bytes.size() - 4);
  bytes[11] = 200;
  const std::uint32_t crc = crc32(bytes);
  for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));
  EXPECT_THROW(deserialize_model(bytes), FormatError);
}
