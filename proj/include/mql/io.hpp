#ifndef MQL_IO_HPP
#define MQL_IO_HPP

// Text parsing and display formatting for quads, complex numbers and words.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mql/curve_complex.hpp"
#include "mql/integral.hpp"
#include "mql/quad.hpp"

namespace mql {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw std::invalid_argument("cannot parse number '" + std::string(whole) + "'");
  }
  return x;
}

inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

}  // namespace detail

/// "x", "x+yi", "x-yi", "yi", "i", "-i" (j is accepted for i).
inline Complex parse_complex(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.back() != 'i' && s.back() != 'j') return {detail::parse_double(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im = split == std::string_view::npos ? body : body.substr(split);
  double y = 1.0;
  if (im == "-") y = -1.0;
  else if (!im.empty() && im != "+") y = detail::parse_double(im, text);
  return {re.empty() ? 0.0 : detail::parse_double(re, text), y};
}

struct ParsedQuad {
  MarkoffQuad quad;
  std::optional<integral::IntegerQuad> exact;  // set when every entry is a nonnegative integer literal
};

/// Four comma-separated entries, optionally wrapped in parentheses.
inline ParsedQuad parse_quad_text(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    const std::size_t comma = s.find(',', start);
    parts.push_back(detail::trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) throw std::invalid_argument("a quad needs exactly four comma-separated entries");

  ParsedQuad out;
  bool integral = true;
  for (std::size_t i = 0; i < 4; ++i) {
    out.quad[i] = parse_complex(parts[i]);
    integral = integral && detail::is_integer_literal(parts[i]);
  }
  if (integral) {
    integral::IntegerQuad q;
    for (std::size_t i = 0; i < 4; ++i) {
      std::string_view p = parts[i];
      if (p.front() == '+') p.remove_prefix(1);
      q[i] = integral::BigInt(std::string(p));
    }
    out.exact = std::move(q);
  }
  return out;
}

/// %.{digits}g with "-0" normalised to "0".
inline std::string format_real(double x, int digits = 15) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string format_complex(Complex z, int digits = 15) {
  if (z.imag() == 0.0) return format_real(z.real(), digits);
  std::string im = format_real(std::abs(z.imag()), digits) + "i";
  if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
  return format_real(z.real(), digits) + (z.imag() < 0 ? "-" : "+") + im;
}

inline std::string format_quad(const MarkoffQuad& q, int digits = 15) {
  return format_complex(q[0], digits) + "," + format_complex(q[1], digits) + "," + format_complex(q[2], digits) +
         "," + format_complex(q[3], digits);
}

/// 1-based flip word, e.g. "f4 f1"; "-" when empty.
inline std::string format_word(const FlipWord& w) {
  if (w.empty()) return "-";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " f" : "f") + std::to_string(w[k] + 1);
  return s;
}

}  // namespace mql

#endif  // MQL_IO_HPP
