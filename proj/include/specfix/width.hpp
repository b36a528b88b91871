#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace specfix {

// Arithmetic value used throughout the interpreter and analyses. 128 bits is
// enough headroom for any single operation on I64 operands; mathematical-mode
// growth beyond that is reported as a runtime error.
using Value = __int128;

enum class Width : int { I8 = 0, I16 = 1, I32 = 2, I64 = 3 };

inline constexpr int width_bits(Width w) {
  constexpr std::array<int, 4> bits{8, 16, 32, 64};
  return bits[static_cast<int>(w)];
}

inline constexpr Value intmax(Width w) {
  return (Value{1} << (width_bits(w) - 1)) - 1;
}

inline constexpr Value intmin(Width w) {
  return -(Value{1} << (width_bits(w) - 1));
}

inline constexpr bool in_range(Value v, Width w) {
  return v >= intmin(w) && v <= intmax(w);
}

// Two's-complement wrap of v into w's range.
inline constexpr Value wrap_to(Value v, Width w) {
  const Value span = Value{1} << width_bits(w);
  Value r = (v - intmin(w)) % span;
  if (r < 0) r += span;
  return r + intmin(w);
}

inline const char* width_name(Width w) {
  constexpr std::array<const char*, 4> names{"i8", "i16", "i32", "i64"};
  return names[static_cast<int>(w)];
}

inline std::optional<Width> width_from_name(const std::string& s) {
  if (s == "i8") return Width::I8;
  if (s == "i16") return Width::I16;
  if (s == "i32") return Width::I32;
  if (s == "i64") return Width::I64;
  return std::nullopt;
}

inline std::optional<Width> next_width(Width w) {
  if (w == Width::I64) return std::nullopt;
  return static_cast<Width>(static_cast<int>(w) + 1);
}

inline std::string value_str(Value v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Avoid negating the minimum by peeling digits from the negative side.
  std::string digits;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    if (d < 0) d = -d;
    digits.push_back(static_cast<char>('0' + d));
    v /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

}  // namespace specfix
