#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bog/descriptors.hpp"
#include "bog/error.hpp"
#include "bog/rng.hpp"
#include "oracles.hpp"

using namespace bog;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::size_t bin_of(int r, int g, int b, int bins = 4) {
  return static_cast<std::size_t>((r * bins + g) * bins + b);
}

Image mirrored(const Image& img) {
  Image out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out(x, y) = img(img.width() - 1 - x, y);
  }
  return out;
}

Image rotated90(const Image& img) {
  Image out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out(img.height() - 1 - y, x) = img(x, y);
  }
  return out;
}

const DescriptorConfig kCfg{};

}  // namespace

TEST(Image, RejectsBadShapes) {
  EXPECT_THROW(Image(2, 2, std::vector<Rgb>(3)), InvalidInput);
  EXPECT_THROW(Image(-1, 2), InvalidInput);
  Image img(3, 2);
  EXPECT_THROW(img.at(3, 0), InvalidInput);
  EXPECT_TRUE(img.contains(2, 1));
  EXPECT_FALSE(img.contains(2, 2));
}

TEST(Image, GrayUsesFixedWeights) {
  const auto g = to_gray(Image(1, 1, Rgb{100, 50, 200}));
  EXPECT_DOUBLE_EQ(g.values[0], 0.299 * 100 + 0.587 * 50 + 0.114 * 200);
}

TEST(Gch, SingleColour) {
  const auto f = extract_gch(Image(8, 8, Rgb{255, 0, 0}), kCfg);
  ASSERT_EQ(f.size(), 64u);
  EXPECT_EQ(f.values[bin_of(3, 0, 0)], 1.0);
  EXPECT_EQ(sum(f.values), 1.0);
}

TEST(Gch, BlackAndWhite) {
  const Image img(2, 2, {{0, 0, 0}, {255, 255, 255}, {255, 255, 255}, {0, 0, 0}});
  const auto f = extract_gch(img, kCfg);
  EXPECT_EQ(f.values[bin_of(0, 0, 0)], 0.5);
  EXPECT_EQ(f.values[bin_of(3, 3, 3)], 0.5);
}

TEST(Gch, MatchesCountingOracle) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(rng, 16, 16);
    for (int bins : {1, 2, 4, 5, 8}) {
      DescriptorConfig cfg;
      cfg.gch_bins_per_channel = bins;
      const auto f = extract_gch(img, cfg);
      const auto want = oracle::gch(img, bins);
      ASSERT_EQ(f.values.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f.values[i], want[i], 1e-12);
    }
  }
}

TEST(Gch, InvariantUnderPixelShuffle) {
  Rng rng(3);
  Image img = oracle::random_image(rng, 12, 9);
  const auto before = extract_gch(img, kCfg);
  rng.shuffle(img.pixels());
  EXPECT_EQ(extract_gch(img, kCfg), before);
}

TEST(Histograms, RejectEmptyImage) {
  for (auto d : kAllDescriptors) EXPECT_THROW(extract(Image{}, d, kCfg), InvalidInput);
}

TEST(Bic, UniformImageIsAllInterior) {
  const auto f = extract_bic(Image(8, 8, Rgb{10, 200, 10}), kCfg);
  ASSERT_EQ(f.size(), 128u);
  EXPECT_EQ(f.values[64 + bin_of(0, 3, 0)], 1.0);
  EXPECT_EQ(sum(std::vector<double>(f.values.begin(), f.values.begin() + 64)), 0.0);
}

TEST(Bic, TwoPixelsAreBothBorder) {
  const auto f = extract_bic(Image(2, 1, {{0, 0, 0}, {255, 255, 255}}), kCfg);
  EXPECT_EQ(f.values[bin_of(0, 0, 0)], 0.5);
  EXPECT_EQ(f.values[bin_of(3, 3, 3)], 0.5);
}

TEST(Bic, MatchesClassificationOracle) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(rng, 16, 16, 3);
    const auto f = extract_bic(img, kCfg);
    const auto want = oracle::bic(img, 4);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f.values[i], want[i], 1e-12);
    const auto border = oracle::bic_border(img, 4);
    const auto n_border = std::count(border.begin(), border.end(), true);
    EXPECT_EQ(n_border + std::count(border.begin(), border.end(), false), 256);
  }
}

TEST(Ccv, UniformImageIsCoherent) {
  const auto f = extract_ccv(Image(32, 32, Rgb{0, 0, 255}), kCfg);
  EXPECT_EQ(f.values[bin_of(0, 0, 3)], 1.0);
  EXPECT_EQ(sum(f.values), 1.0);
}

TEST(Ccv, IsolatedPixelIsIncoherent) {
  Image img(10, 10, Rgb{0, 0, 0});
  img(4, 4) = Rgb{255, 255, 255};
  DescriptorConfig cfg;
  cfg.ccv_tau_fraction = 0.05;
  const auto f = extract_ccv(img, cfg);
  EXPECT_DOUBLE_EQ(f.values[64 + bin_of(3, 3, 3)], 0.01);
  EXPECT_EQ(f.values[bin_of(3, 3, 3)], 0.0);
  EXPECT_DOUBLE_EQ(f.values[bin_of(0, 0, 0)], 0.99);
}

TEST(Ccv, DiagonalNeighboursConnect) {
  // Two diagonal pixels form one 8-connected component of size 2.
  Image img(4, 4, Rgb{0, 0, 0});
  img(1, 1) = Rgb{255, 0, 0};
  img(2, 2) = Rgb{255, 0, 0};
  DescriptorConfig cfg;
  cfg.ccv_tau_fraction = 2.0 / 16.0;
  EXPECT_DOUBLE_EQ(extract_ccv(img, cfg).values[bin_of(3, 0, 0)], 2.0 / 16.0);
}

TEST(Ccv, MatchesFloodFillOracle) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(rng, 16, 16, 3);
    DescriptorConfig cfg;
    cfg.ccv_tau_fraction = 0.02 + 0.1 * rng.uniform();
    const auto f = extract_ccv(img, cfg);
    const auto want = oracle::ccv(img, 4, cfg.ccv_tau_fraction);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f.values[i], want[i], 1e-12);
  }
}

TEST(SplitHistograms, PerColourMassEqualsGch) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(rng, 16, 16, t % 2 ? 4 : 0);
    const auto g = extract_gch(img, kCfg).values;
    const auto b = extract_bic(img, kCfg).values;
    const auto c = extract_ccv(img, kCfg).values;
    for (std::size_t i = 0; i < 64; ++i) {
      EXPECT_EQ(b[i] + b[64 + i], g[i]);
      EXPECT_EQ(c[i] + c[64 + i], g[i]);
    }
  }
}

TEST(Acc, UniformImageIsOne) {
  const auto f = extract_acc(Image(9, 9, Rgb{200, 200, 0}), kCfg);
  ASSERT_EQ(f.size(), 64u * 4);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t c = 0; c < 64; ++c) {
      EXPECT_EQ(f.values[k * 64 + c], c == bin_of(3, 3, 0) ? 1.0 : 0.0);
    }
  }
}

TEST(Acc, CheckerboardHasNoSameColourNeighbours) {
  const Image img(2, 2, {{0, 0, 0}, {255, 255, 255}, {255, 255, 255}, {0, 0, 0}});
  DescriptorConfig cfg;
  cfg.acc_distances = {1};
  const auto f = extract_acc(img, cfg);
  // Each pixel's L-inf ring holds one same-colour diagonal and two others.
  EXPECT_DOUBLE_EQ(f.values[bin_of(0, 0, 0)], 1.0 / 3.0);
  Image stripes(2, 1, {{0, 0, 0}, {255, 255, 255}});
  EXPECT_EQ(extract_acc(stripes, cfg).values[bin_of(0, 0, 0)], 0.0);
}

TEST(Acc, MatchesPairEnumerationOracle) {
  Rng rng(10);
  DescriptorConfig cfg;
  cfg.acc_distances = {1, 3};
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(rng, 8, 8, 3);
    const auto f = extract_acc(img, cfg);
    const auto want = oracle::acc(img, 4, cfg.acc_distances);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f.values[i], want[i], 1e-12);
  }
}

TEST(HistogramFamily, MirrorInvariant) {
  Rng rng(12);
  const Image img = oracle::random_image(rng, 13, 7, 4);
  const Image m = mirrored(img);
  for (auto d : {DescriptorKind::GCH, DescriptorKind::BIC, DescriptorKind::CCV, DescriptorKind::ACC}) {
    const auto a = extract(img, d, kCfg).values;
    const auto b = extract(m, d, kCfg).values;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12) << descriptor_name(d);
  }
}

TEST(Gfd, ConstantImage) {
  const auto f = extract_gfd(Image(40, 30, Rgb{90, 90, 90}), kCfg);
  ASSERT_EQ(f.size(), 36u);
  EXPECT_NEAR(f.values[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < f.size(); ++i) EXPECT_LE(std::abs(f.values[i]), 1e-6);
}

TEST(Gfd, BlackImageFallsBackToZero) {
  const auto f = extract_gfd(Image(16, 16, Rgb{0, 0, 0}), kCfg);
  EXPECT_EQ(f.values, std::vector<double>(36, 0.0));
}

TEST(Gfd, NearlyRotationInvariant) {
  // A smooth off-centre blob on a square canvas.
  Image img(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double r2 = (x - 24.0) * (x - 24.0) + (y - 36.0) * (y - 36.0) * 0.5;
      const auto v = static_cast<std::uint8_t>(40 + 200 * std::exp(-r2 / 120.0));
      img(x, y) = {v, v, v};
    }
  }
  const auto a = extract_gfd(img, kCfg).values;
  const auto b = extract_gfd(rotated90(img), kCfg).values;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 0.05) << i;
}

TEST(Hwd, ConstantImage) {
  const auto f = extract_hwd(Image(30, 20, Rgb{50, 50, 50}), kCfg);
  ASSERT_EQ(f.size(), 10u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(f.values[i], 0.0);
  EXPECT_NEAR(f.values[9], 50.0, 1e-9);
}

TEST(Hwd, LinearInIntensity) {
  Rng rng(4);
  Image img = oracle::random_image(rng, 32, 32);
  for (auto& p : img.pixels()) p = {static_cast<std::uint8_t>(p.r / 2), static_cast<std::uint8_t>(p.g / 2),
                                     static_cast<std::uint8_t>(p.b / 2)};
  Image doubled = img;
  for (auto& p : doubled.pixels()) {
    p = {static_cast<std::uint8_t>(p.r * 2), static_cast<std::uint8_t>(p.g * 2),
         static_cast<std::uint8_t>(p.b * 2)};
  }
  const auto a = extract_hwd(img, kCfg).values;
  const auto b = extract_hwd(doubled, kCfg).values;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i], 2.0 * a[i], 1e-9);
}

TEST(Hwd, LevelOneMatchesDirectFilter) {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const Image img = oracle::random_image(rng, 64, 64);
    const auto f = extract_hwd(img, kCfg);
    EXPECT_NEAR(f.values[0], oracle::haar_level1_horizontal(to_gray(img)), 1e-9);
  }
}

TEST(Hwd, RejectsBadConfig) {
  DescriptorConfig cfg;
  cfg.hwd_resize = 48;
  EXPECT_THROW(extract_hwd(Image(8, 8), cfg), ConfigError);
  cfg.hwd_resize = 8;
  cfg.hwd_levels = 4;
  EXPECT_THROW(extract_hwd(Image(8, 8), cfg), ConfigError);
}

TEST(Dispatch, LengthsAndTags) {
  Rng rng(1);
  const Image img = oracle::random_image(rng, 16, 16);
  const std::map<DescriptorKind, std::size_t> want = {
      {DescriptorKind::ACC, 256}, {DescriptorKind::CCV, 128}, {DescriptorKind::BIC, 128},
      {DescriptorKind::GCH, 64},  {DescriptorKind::GFD, 36},  {DescriptorKind::HWD, 10}};
  for (auto d : kAllDescriptors) {
    const auto f = extract(img, d, kCfg);
    EXPECT_EQ(f.descriptor, d);
    EXPECT_EQ(f.size(), want.at(d));
    EXPECT_EQ(descriptor_length(d, kCfg), want.at(d));
    EXPECT_EQ(extract(img, d, kCfg), f) << "extractors must be pure";
    for (double v : f.values) EXPECT_TRUE(std::isfinite(v));
  }
  EXPECT_EQ(extract(img, DescriptorKind::GCH, kCfg), extract_gch(img, kCfg));
}

TEST(Dispatch, OnePixelImages) {
  const Image img(1, 1, Rgb{255, 255, 255});
  EXPECT_EQ(extract_gch(img, kCfg).values[63], 1.0);
  EXPECT_EQ(extract_bic(img, kCfg).values[64 + 63], 1.0);
  EXPECT_EQ(extract_ccv(img, kCfg).values[63], 1.0);
  EXPECT_NO_THROW(extract_gfd(img, kCfg));
  EXPECT_NO_THROW(extract_hwd(img, kCfg));
}

TEST(Names, RoundTrip) {
  for (auto d : kAllDescriptors) {
    EXPECT_EQ(parse_descriptor(descriptor_name(d)), d);
    EXPECT_EQ(descriptor_from_byte(static_cast<std::uint8_t>(d)), d);
  }
  EXPECT_EQ(parse_descriptor("gch"), DescriptorKind::GCH);
  EXPECT_THROW(parse_descriptor("SIFT"), ConfigError);
  EXPECT_THROW(descriptor_from_byte(6), FormatError);
}

TEST(Config, Validation) {
  DescriptorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.ccv_tau_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.gch_bins_per_channel = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.acc_distances = {};
  EXPECT_THROW(cfg.validate(), ConfigError);
}
