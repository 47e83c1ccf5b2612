#include "offline_euro/bytes.hpp"

namespace offline_euro {

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

ByteView ByteReader::take(std::size_t n) {
  if (n > remaining()) {
    throw TruncatedInput("truncated input: need " + std::to_string(n) + " bytes, have " +
                         std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint16_t ByteReader::u16_be() {
  auto b = take(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32_be() {
  auto b = take(4);
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

std::string ByteReader::string_u16() {
  auto n = u16_be();
  auto b = take(n);
  return {b.begin(), b.end()};
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    throw TrailingBytes(std::to_string(remaining()) + " trailing bytes");
  }
}

void append_string_u16(Bytes& out, std::string_view s) {
  if (s.size() > 0xFFFF) throw std::length_error("string longer than 65535 bytes");
  out.push_back(static_cast<std::uint8_t>(s.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(s.size()));
  append(out, as_bytes(s));
}

}  // namespace offline_euro
