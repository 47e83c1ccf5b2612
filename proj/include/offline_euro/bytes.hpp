#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace offline_euro {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Raised when a byte string is not a valid canonical encoding.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncatedInput : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

class TrailingBytes : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

/// Raised when a protocol state machine is driven out of order
/// (nonce reuse, session reuse, malformed inputs to a protocol step).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void append(Bytes& out, ByteView data) {
  out.insert(out.end(), data.begin(), data.end());
}

inline void append_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);

/// Sequential reader over an encoded buffer; every read is bounds-checked
/// and throws TruncatedInput on truncation.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  ByteView take(std::size_t n);
  std::uint8_t u8();
  std::uint16_t u16_be();
  std::uint32_t u32_be();
  std::string string_u16();

  std::size_t remaining() const { return data_.size() - pos_; }
  void expect_end() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

void append_string_u16(Bytes& out, std::string_view s);

}  // namespace offline_euro
