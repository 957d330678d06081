#include "bog/binary_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bog/error.hpp"

namespace bog {

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for buffers over 4 GiB.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
    crc = ::crc32(crc, bytes.data() + off, chunk);
    off += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

// --- ByteWriter -------------------------------------------------------------

void ByteWriter::bytes(std::span<const std::uint8_t> data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::magic(std::string_view four_chars) {
  for (char c : four_chars) buf_.push_back(static_cast<std::uint8_t>(c));
}

void ByteWriter::u8(std::uint8_t v) { buf_.push_back(v); }

void ByteWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::f64s(std::span<const double> values) {
  buf_.reserve(buf_.size() + 8 * values.size());
  for (double v : values) f64(v);
}

void ByteWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  for (char c : s) buf_.push_back(static_cast<std::uint8_t>(c));
}

void ByteWriter::append_crc32() { u32(crc32(buf_)); }

// --- ByteReader -------------------------------------------------------------

std::span<const std::uint8_t> ByteReader::take(std::size_t n, std::string_view field) {
  if (n > remaining()) {
    throw FormatError("truncated file: need " + std::to_string(n) + " bytes for '" +
                      std::string(field) + "' at offset " + std::to_string(pos_) + ", have " +
                      std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::verify_and_strip_crc32() {
  if (data_.size() < 4) {
    throw FormatError("truncated file: " + std::to_string(data_.size()) +
                      " bytes is too short for a CRC32 trailer");
  }
  const auto body = data_.first(data_.size() - 4);
  const auto tail = data_.last(4);
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored |= static_cast<std::uint32_t>(tail[i]) << (8 * i);
  if (crc32(body) != stored) {
    throw FormatError("CRC32 mismatch over bytes [0, " + std::to_string(body.size()) +
                      "): file is corrupt or truncated");
  }
  data_ = body;
}

void ByteReader::expect_magic(std::string_view four_chars) {
  const auto got = take(four_chars.size(), "magic");
  if (std::memcmp(got.data(), four_chars.data(), four_chars.size()) != 0) {
    throw FormatError("bad magic at offset 0: expected '" + std::string(four_chars) + "'");
  }
}

std::uint8_t ByteReader::u8(std::string_view field) { return take(1, field)[0]; }

std::uint16_t ByteReader::u16(std::string_view field) {
  const auto b = take(2, field);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t ByteReader::u32(std::string_view field) {
  const auto b = take(4, field);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t ByteReader::u64(std::string_view field) {
  const auto b = take(8, field);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double ByteReader::f64(std::string_view field) { return std::bit_cast<double>(u64(field)); }

void ByteReader::f64s(std::span<double> out, std::string_view field) {
  if (out.size() > remaining() / 8) {
    throw FormatError("truncated file: need " + std::to_string(out.size() * 8) +
                      " bytes for '" + std::string(field) + "' at offset " +
                      std::to_string(pos_) + ", have " + std::to_string(remaining()));
  }
  for (double& v : out) v = f64(field);
}

std::string ByteReader::str(std::string_view field) {
  const std::uint32_t n = u32(field);
  const auto b = take(n, field);
  return std::string(b.begin(), b.end());
}

std::array<std::uint8_t, 32> ByteReader::bytes32(std::string_view field) {
  const auto b = take(32, field);
  std::array<std::uint8_t, 32> out{};
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    throw FormatError(std::to_string(remaining()) + " unexpected trailing bytes at offset " +
                      std::to_string(pos_));
  }
}

// --- files ------------------------------------------------------------------

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return data;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                    text.size()));
}

}  // namespace bog
