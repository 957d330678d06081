#include "bog/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "bog/binary_io.hpp"
#include "bog/error.hpp"
#include "bog/report.hpp"
#include "bog/text.hpp"

namespace bog {

namespace fs = std::filesystem;

std::string_view split_name(Split s) { return s == Split::Train ? "train" : "test"; }

Split parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  throw InvalidInput("split must be 'train' or 'test', got '" + std::string(s) + "'");
}

// --- manifest ---------------------------------------------------------------

std::vector<const ManifestEntry*> DatasetManifest::in_split(Split s) const {
  std::vector<const ManifestEntry*> out;
  for (const auto& v : videos) {
    if (v.split == s) out.push_back(&v);
  }
  return out;
}

const ManifestEntry* DatasetManifest::find(std::string_view video_id) const {
  for (const auto& v : videos) {
    if (v.video_id == video_id) return &v;
  }
  return nullptr;
}

DatasetManifest parse_manifest(std::string_view csv_text, const fs::path& base_dir,
                               bool require_dirs) {
  const auto lines = split_lines(csv_text);
  if (lines.empty()) throw InvalidInput("manifest is empty");
  const auto header = split_csv_line(lines.front());
  if (header != std::vector<std::string>{"video_id", "genre", "split", "frame_dir"}) {
    throw InvalidInput("manifest header must be 'video_id,genre,split,frame_dir'");
  }

  std::vector<std::string> genre_names;
  std::vector<ManifestEntry> videos;
  std::set<std::string> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = split_csv_line(lines[i]);
    const std::string where = "manifest line " + std::to_string(i + 1);
    if (cells.size() != 4) throw InvalidInput(where + ": expected 4 cells");
    if (cells[0].empty() || cells[1].empty() || cells[3].empty()) {
      throw InvalidInput(where + ": empty cell");
    }
    if (!ids.insert(cells[0]).second) {
      throw InvalidInput(where + ": duplicate video_id '" + cells[0] + "'");
    }
    auto it = std::find(genre_names.begin(), genre_names.end(), cells[1]);
    if (it == genre_names.end()) {
      genre_names.push_back(cells[1]);
      it = genre_names.end() - 1;
    }
    ManifestEntry e;
    e.video_id = cells[0];
    e.genre = static_cast<GenreIndex>(it - genre_names.begin());
    e.split = parse_split(cells[2]);
    fs::path dir(cells[3]);
    e.frame_dir = dir.is_absolute() ? dir : base_dir / dir;
    if (require_dirs && !fs::is_directory(e.frame_dir)) {
      throw InvalidInput(where + ": frame_dir " + e.frame_dir.string() + " does not exist");
    }
    videos.push_back(std::move(e));
  }
  DatasetManifest m{GenreSet(std::move(genre_names)), std::move(videos)};
  return m;
}

DatasetManifest load_manifest(const fs::path& path, bool require_dirs) {
  const auto bytes = read_file(path);
  return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                        path.parent_path(), require_dirs);
}

std::string manifest_to_csv(const DatasetManifest& manifest, const fs::path& base_dir) {
  std::ostringstream os;
  os << "video_id,genre,split,frame_dir\n";
  for (const auto& v : manifest.videos) {
    fs::path dir = v.frame_dir;
    if (!base_dir.empty()) {
      const auto rel = dir.lexically_relative(base_dir);
      if (!rel.empty() && *rel.begin() != "..") dir = rel;
    }
    os << v.video_id << ',' << manifest.genres.name(v.genre) << ',' << split_name(v.split) << ','
       << dir.generic_string() << '\n';
  }
  return os.str();
}

std::vector<fs::path> list_frames(const fs::path& frame_dir) {
  std::vector<fs::path> frames;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(frame_dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") frames.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + frame_dir.string() + ": " + ec.message());
  std::sort(frames.begin(), frames.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return frames;
}

// --- feature cache ----------------------------------------------------------
//   "BOGF" | u16 version | u8 descriptor | 32-byte config hash | u64 entries
//   | u32 dim | entries x (str video_id, u32 frame, f64[dim]) | u32 CRC32

namespace {
constexpr std::string_view kCacheMagic = "BOGF";
constexpr std::string_view kBogMagic = "BOGB";
constexpr std::uint16_t kFormatVersion = 1;
}  // namespace

void FeatureCache::insert(const std::string& video_id, std::uint32_t frame,
                          std::vector<double> values) {
  if (values.size() != dim) {
    throw InvalidInput("feature length " + std::to_string(values.size()) +
                       " does not match cache dimension " + std::to_string(dim));
  }
  entries.insert_or_assign(FrameKey{video_id, frame}, std::move(values));
}

std::vector<FeatureVector> FeatureCache::frames_of(const std::string& video_id) const {
  std::vector<FeatureVector> out;
  for (auto it = entries.lower_bound(FrameKey{video_id, 0});
       it != entries.end() && it->first.first == video_id; ++it) {
    out.push_back(FeatureVector{descriptor, it->second});
  }
  return out;
}

std::vector<std::uint8_t> serialize_feature_cache(const FeatureCache& cache) {
  ByteWriter w;
  w.magic(kCacheMagic);
  w.u16(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(cache.descriptor));
  w.bytes(cache.config_hash);
  w.u64(cache.entries.size());
  w.u32(cache.dim);
  for (const auto& [key, values] : cache.entries) {
    if (values.size() != cache.dim) throw InvalidInput("cache entry has wrong dimension");
    w.str(key.first);
    w.u32(key.second);
    w.f64s(values);
  }
  w.append_crc32();
  return w.buffer();
}

FeatureCache deserialize_feature_cache(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.verify_and_strip_crc32();
  r.expect_magic(kCacheMagic);
  const auto version = r.u16("version");
  if (version != kFormatVersion) {
    throw FormatError("unsupported feature cache version " + std::to_string(version));
  }
  FeatureCache c;
  c.descriptor = descriptor_from_byte(r.u8("descriptor"));
  c.config_hash = r.bytes32("config hash");
  const std::uint64_t count = r.u64("entry count");
  c.dim = r.u32("dimension");
  if (c.dim == 0) throw FormatError("feature cache declares zero dimension");
  // Each record needs at least 8 bytes of header plus the vector.
  if (count > r.remaining() / (8 + 8ull * c.dim)) {
    throw FormatError("feature cache declares " + std::to_string(count) +
                      " entries but only " + std::to_string(r.remaining()) + " bytes follow");
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string id = r.str("video_id");
    const std::uint32_t frame = r.u32("frame index");
    std::vector<double> values(c.dim);
    r.f64s(values, "feature values");
    if (!c.entries.emplace(FrameKey{std::move(id), frame}, std::move(values)).second) {
      throw FormatError("duplicate feature cache entry at offset " + std::to_string(r.offset()));
    }
  }
  r.expect_end();
  return c;
}

void save_feature_cache(const FeatureCache& cache, const fs::path& path) {
  write_file_atomic(path, serialize_feature_cache(cache));
}

FeatureCache load_feature_cache(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return deserialize_feature_cache(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

// --- BoG file -----------------------------------------------------------------
//   "BOGB" | u16 version | u32 G | 32-byte config hash | G x str genre name
//   | u64 count | count x (str video_id, u32 genre, u32 frame_count, f64[G])
//   | u32 CRC32

std::vector<std::uint8_t> serialize_bog_file(const BogFile& file) {
  const auto G = static_cast<std::uint32_t>(file.genre_names.size());
  ByteWriter w;
  w.magic(kBogMagic);
  w.u16(kFormatVersion);
  w.u32(G);
  w.bytes(file.config_hash);
  for (const auto& n : file.genre_names) w.str(n);
  w.u64(file.vectors.size());
  for (const auto& v : file.vectors) {
    if (v.histogram.size() != G) throw InvalidInput("BoG vector has wrong dimension");
    w.str(v.video_id);
    w.u32(v.genre);
    w.u32(v.frame_count);
    w.f64s(v.histogram);
  }
  w.append_crc32();
  return w.buffer();
}

BogFile deserialize_bog_file(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.verify_and_strip_crc32();
  r.expect_magic(kBogMagic);
  const auto version = r.u16("version");
  if (version != kFormatVersion) {
    throw FormatError("unsupported BoG file version " + std::to_string(version));
  }
  BogFile f;
  const std::uint32_t G = r.u32("genre count");
  if (G < 2) throw FormatError("BoG file declares fewer than two genres");
  f.config_hash = r.bytes32("config hash");
  for (std::uint32_t g = 0; g < G; ++g) f.genre_names.push_back(r.str("genre name"));
  const std::uint64_t count = r.u64("vector count");
  if (count > r.remaining() / (12 + 8ull * G)) {
    throw FormatError("BoG file declares " + std::to_string(count) + " vectors but only " +
                      std::to_string(r.remaining()) + " bytes follow");
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    BoGVector v;
    v.video_id = r.str("video_id");
    v.genre = r.u32("genre");
    if (v.genre >= G) throw FormatError("BoG vector genre out of range at offset " + std::to_string(r.offset()));
    v.frame_count = r.u32("frame count");
    v.histogram.resize(G);
    r.f64s(v.histogram, "histogram");
    f.vectors.push_back(std::move(v));
  }
  r.expect_end();
  return f;
}

void save_bog_file(const BogFile& file, const fs::path& path) {
  write_file_atomic(path, serialize_bog_file(file));
}

BogFile load_bog_file(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return deserialize_bog_file(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string bog_to_csv(const BogFile& file) {
  std::ostringstream os;
  os << "video_id";
  for (std::size_t g = 0; g < file.genre_names.size(); ++g) os << ",g" << g;
  os << ",config_hash\n";
  const std::string hash = to_hex(file.config_hash);
  for (const auto& v : file.vectors) {
    os << v.video_id;
    for (double x : v.histogram) os << ',' << format_double(x);
    os << ',' << hash << '\n';
  }
  return os.str();
}

}  // namespace bog
