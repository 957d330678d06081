#include "bog/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "bog/binary_io.hpp"
#include "bog/error.hpp"
#include "bog/parallel.hpp"
#include "bog/rng.hpp"

namespace bog {

namespace fs = std::filesystem;

void SynthSpec::validate() const {
  if (genres < 2) throw InvalidInput("synth: need at least two genres");
  if (genres > 64) throw InvalidInput("synth: at most 64 genres (one per colour bin)");
  if (videos_per_genre < 1 || frames_per_video < 1) {
    throw InvalidInput("synth: video and frame counts must be >= 1");
  }
  if (!(noise >= 0.0 && noise <= 1.0)) throw InvalidInput("synth: noise must be in [0,1]");
  if (width < 1 || height < 1) throw InvalidInput("synth: frame size must be positive");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidInput("synth: train_fraction must be in (0,1)");
  }
}

namespace {

constexpr int kBins = 4;
constexpr int kBinWidth = 256 / kBins;

// Bin coordinates of the palette: the eight cube corners first (three bins
// apart), then every other bin in lexicographic order.
const std::array<std::array<int, 3>, 64>& palette_bins() {
  static const auto table = [] {
    std::array<std::array<int, 3>, 64> t{};
    const std::array<std::array<int, 3>, 8> corners = {{{3, 0, 0},
                                                        {0, 3, 0},
                                                        {0, 0, 3},
                                                        {3, 3, 0},
                                                        {3, 0, 3},
                                                        {0, 3, 3},
                                                        {3, 3, 3},
                                                        {0, 0, 0}}};
    std::size_t n = 0;
    for (const auto& c : corners) t[n++] = c;
    for (int r = 0; r < kBins; ++r) {
      for (int g = 0; g < kBins; ++g) {
        for (int b = 0; b < kBins; ++b) {
          const std::array<int, 3> c{r, g, b};
          if (std::find(corners.begin(), corners.end(), c) == corners.end()) t[n++] = c;
        }
      }
    }
    return t;
  }();
  return table;
}

std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Keeps v inside the quantisation bin `bin`.
double clamp_to_bin(double v, int bin) {
  return std::clamp(v, bin * kBinWidth + 0.0, bin * kBinWidth + kBinWidth - 1.0);
}

}  // namespace

Rgb genre_color(int g) {
  const auto& b = palette_bins().at(static_cast<std::size_t>(g));
  auto centre = [](int bin) { return static_cast<std::uint8_t>(bin * kBinWidth + kBinWidth / 2); };
  return {centre(b[0]), centre(b[1]), centre(b[2])};
}

std::string synth_genre_name(int g) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "genre_%02d", g);
  return buf;
}

std::string synth_video_id(int genre, int video) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "g%02d_v%03d", genre, video);
  return buf;
}

Image synthesize_frame(const SynthSpec& spec, int genre, int video, int frame) {
  spec.validate();
  const double noise = spec.noise;
  const auto video_key = static_cast<std::uint64_t>(genre) * 1000003ULL + static_cast<std::uint64_t>(video);
  Rng video_rng(derive_seed(spec.seed, video_key));
  Rng rng(derive_seed(derive_seed(spec.seed, video_key), static_cast<std::uint64_t>(frame) + 1));

  std::array<double, 3> tint{};
  for (double& t : tint) t = video_rng.normal() * noise * 16.0;

  int source = genre;
  if (noise > 0.0 && rng.uniform() < noise * noise) {
    source = static_cast<int>((genre + 1 + static_cast<int>(rng.below(
                                               static_cast<std::uint64_t>(spec.genres - 1)))) %
                              spec.genres);
  }
  const Rgb base = genre_color(source);
  const auto& bins = palette_bins()[static_cast<std::size_t>(source)];
  std::array<double, 3> colour = {base.r + tint[0], base.g + tint[1], base.b + tint[2]};
  for (double& c : colour) c += rng.normal() * noise * 64.0;

  Image img(spec.width, spec.height,
            Rgb{clamp_byte(colour[0]), clamp_byte(colour[1]), clamp_byte(colour[2])});

  // In-bin rectangles give the texture descriptors structure without moving
  // histogram mass when noise is zero.
  const int shapes = 1 + static_cast<int>(rng.below(3));
  for (int s = 0; s < shapes; ++s) {
    const int w = std::max(1, spec.width / 8 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.width / 4 + 1))));
    const int h = std::max(1, spec.height / 8 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.height / 4 + 1))));
    const int x0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, spec.width - w + 1))));
    const int y0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, spec.height - h + 1))));
    std::array<double, 3> c{};
    for (int ch = 0; ch < 3; ++ch) {
      const double raw = (ch == 0 ? base.r : ch == 1 ? base.g : base.b) + rng.uniform(-28.0, 28.0);
      c[ch] = noise > 0.0 ? raw + tint[ch] : clamp_to_bin(raw, bins[ch]);
    }
    const Rgb fill{clamp_byte(c[0]), clamp_byte(c[1]), clamp_byte(c[2])};
    for (int y = y0; y < std::min(spec.height, y0 + h); ++y) {
      for (int x = x0; x < std::min(spec.width, x0 + w); ++x) img(x, y) = fill;
    }
  }

  if (noise > 0.0) {
    const double jitter = noise * 48.0;
    for (Rgb& p : img.pixels()) {
      if (rng.uniform() < noise) {
        p = Rgb{static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
                static_cast<std::uint8_t>(rng.below(256))};
      } else {
        p = Rgb{clamp_byte(p.r + rng.normal() * jitter), clamp_byte(p.g + rng.normal() * jitter),
                clamp_byte(p.b + rng.normal() * jitter)};
      }
    }
  }
  return img;
}

DatasetManifest synth_manifest(const SynthSpec& spec) {
  spec.validate();
  std::vector<std::string> names;
  for (int g = 0; g < spec.genres; ++g) names.push_back(synth_genre_name(g));
  DatasetManifest m{GenreSet(std::move(names)), {}};

  int n_train = static_cast<int>(std::lround(spec.train_fraction * spec.videos_per_genre));
  n_train = std::clamp(n_train, 1, std::max(1, spec.videos_per_genre - 1));
  for (int g = 0; g < spec.genres; ++g) {
    for (int v = 0; v < spec.videos_per_genre; ++v) {
      ManifestEntry e;
      e.video_id = synth_video_id(g, v);
      e.genre = static_cast<GenreIndex>(g);
      e.split = (v < n_train || spec.videos_per_genre == 1) ? Split::Train : Split::Test;
      e.frame_dir = fs::path("frames") / e.video_id;
      m.videos.push_back(std::move(e));
    }
  }
  return m;
}

DatasetManifest write_synthetic_dataset(const SynthSpec& spec, const fs::path& out_dir, bool force,
                                        unsigned jobs) {
  spec.validate();
  std::error_code ec;
  if (fs::exists(out_dir) && !fs::is_empty(out_dir)) {
    if (!force) {
      throw InvalidInput("output directory " + out_dir.string() +
                         " is not empty (use --force to overwrite)");
    }
    fs::remove_all(out_dir / "frames", ec);
    fs::remove(out_dir / "manifest.csv", ec);
  }
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  DatasetManifest m = synth_manifest(spec);
  for (auto& e : m.videos) {
    e.frame_dir = out_dir / e.frame_dir;
    fs::create_directories(e.frame_dir, ec);
    if (ec) throw IoError("cannot create " + e.frame_dir.string() + ": " + ec.message());
  }

  const std::size_t per_video = static_cast<std::size_t>(spec.frames_per_video);
  parallel_for(m.videos.size() * per_video, jobs, [&](std::size_t job) {
    const auto& e = m.videos[job / per_video];
    const int frame = static_cast<int>(job % per_video);
    const int video = static_cast<int>(job / per_video) % spec.videos_per_genre;
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.png", frame);
    save_image(synthesize_frame(spec, static_cast<int>(e.genre), video, frame), e.frame_dir / name);
  });

  write_text_atomic(out_dir / "manifest.csv", manifest_to_csv(m, out_dir));
  return m;
}

}  // namespace bog
