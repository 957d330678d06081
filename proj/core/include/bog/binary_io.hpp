#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bog {

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Append-only little-endian encoder. Callers finish with append_crc32().
class ByteWriter {
 public:
  void bytes(std::span<const std::uint8_t> data);
  void magic(std::string_view four_chars);
  void u8(std::uint8_t v);
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void f64s(std::span<const double> values);
  /// u32 length followed by raw bytes.
  void str(std::string_view s);
  /// CRC32 of everything written so far, as a u32 trailer.
  void append_crc32();

  const std::vector<std::uint8_t>& buffer() const noexcept { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked little-endian decoder. Every failure throws FormatError
/// naming the byte offset and the field being read.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  /// Verifies and strips a trailing CRC32 over the preceding bytes.
  void verify_and_strip_crc32();
  void expect_magic(std::string_view four_chars);
  std::uint8_t u8(std::string_view field);
  std::uint16_t u16(std::string_view field);
  std::uint32_t u32(std::string_view field);
  std::uint64_t u64(std::string_view field);
  double f64(std::string_view field);
  void f64s(std::span<double> out, std::string_view field);
  std::string str(std::string_view field);
  std::array<std::uint8_t, 32> bytes32(std::string_view field);

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  /// Throws unless every byte has been consumed.
  void expect_end() const;

 private:
  std::span<const std::uint8_t> take(std::size_t n, std::string_view field);

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace bog
