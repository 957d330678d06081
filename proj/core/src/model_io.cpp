// Model file layout (little-endian):
//   "BOGM" | u16 version | u8 descriptor | u32 G | u32 D
//   f64[D] means | f64[D] scales | f64[G*D] weights (row-major) | f64[G] biases
//   G x (u32 length, bytes) genre names | 32-byte feature hash | 32-byte config hash
//   u32 CRC32 of everything above

#include <string>

#include "bog/binary_io.hpp"
#include "bog/classifier.hpp"
#include "bog/error.hpp"

namespace bog {
namespace {
constexpr std::string_view kMagic = "BOGM";
constexpr std::uint16_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> serialize_model(const LinearModel& model) {
  model.validate();
  ByteWriter w;
  w.magic(kMagic);
  w.u16(kVersion);
  w.u8(static_cast<std::uint8_t>(model.descriptor));
  w.u32(static_cast<std::uint32_t>(model.genre_count()));
  w.u32(static_cast<std::uint32_t>(model.feature_dim));
  w.f64s(model.means);
  w.f64s(model.scales);
  w.f64s(model.weights);
  w.f64s(model.biases);
  for (const auto& name : model.genres.labels()) w.str(name);
  w.bytes(model.feature_hash);
  w.bytes(model.config_hash);
  w.append_crc32();
  return w.buffer();
}

LinearModel deserialize_model(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.verify_and_strip_crc32();
  r.expect_magic(kMagic);
  const std::uint16_t version = r.u16("version");
  if (version != kVersion) {
    throw FormatError("unsupported model version " + std::to_string(version) + " at offset 4");
  }
  LinearModel m;
  m.descriptor = descriptor_from_byte(r.u8("descriptor"));
  const std::size_t header_G_offset = r.offset();
  const std::uint32_t G = r.u32("genre count");
  const std::uint32_t D = r.u32("feature dimension");
  if (G < 2) {
    throw FormatError("genre count " + std::to_string(G) + " at offset " +
                      std::to_string(header_G_offset) + " is below 2");
  }
  if (D == 0) throw FormatError("feature dimension is zero at offset 11");
  const std::uint64_t doubles = 2ull * D + static_cast<std::uint64_t>(G) * D + G;
  if (doubles * 8 > r.remaining()) {
    throw FormatError("declared dimensions G=" + std::to_string(G) + " D=" + std::to_string(D) +
                      " need " + std::to_string(doubles * 8) + " bytes after offset " +
                      std::to_string(r.offset()) + ", file has " +
                      std::to_string(r.remaining()));
  }
  m.feature_dim = D;
  m.means.resize(D);
  m.scales.resize(D);
  m.weights.resize(static_cast<std::size_t>(G) * D);
  m.biases.resize(G);
  r.f64s(m.means, "means");
  r.f64s(m.scales, "scales");
  r.f64s(m.weights, "weights");
  r.f64s(m.biases, "biases");

  std::vector<std::string> names;
  names.reserve(G);
  for (std::uint32_t g = 0; g < G; ++g) names.push_back(r.str("genre name"));
  m.feature_hash = r.bytes32("feature hash");
  m.config_hash = r.bytes32("config hash");
  r.expect_end();

  try {
    m.genres = GenreSet(std::move(names));
    m.validate();
  } catch (const InvalidInput& e) {
    throw FormatError(std::string("model file failed validation: ") + e.what());
  }
  return m;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

LinearModel load_model(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return deserialize_model(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace bog
