#pragma once

// Exact Laurent polynomials in one variable A with arbitrary-precision integer
// coefficients. Every bracket value and skein-module coefficient is one of these.

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "kbsm/error.hpp"

namespace kbsm {

using Coeff = mpz_class;

class LaurentPoly {
public:
  using Terms = std::map<int, Coeff>;

  LaurentPoly() = default;
  LaurentPoly(long constant) { add_term(0, Coeff(constant)); }  // NOLINT: implicit by design of ring literals
  LaurentPoly(const Coeff& constant) { add_term(0, constant); }   // NOLINT

  static LaurentPoly monomial(const Coeff& c, int exponent) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
  }
  /// The variable A itself.
  static LaurentPoly A(int exponent = 1) { return monomial(1, exponent); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Coeff coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  int max_exponent() const { return terms_.rbegin()->first; }
  int min_exponent() const { return terms_.begin()->first; }

  /// True for ±A^k, the units of Z[A, A^-1].
  bool is_unit() const {
    return terms_.size() == 1 && abs(terms_.begin()->second) == 1;
  }
  /// Inverse of a unit monomial; undefined for non-units.
  LaurentPoly unit_inverse() const {
    const auto& [e, c] = *terms_.begin();
    return monomial(c, -e);
  }

  void add_term(int exponent, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [e1, c1] : a.terms_) {
      for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// Multiply by A^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }
  /// Substitute A -> A^-1.
  LaurentPoly mirrored() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

private:
  Terms terms_;  // no zero coefficients stored
};

inline LaurentPoly pow(const LaurentPoly& f, unsigned n) {
  LaurentPoly result = 1;
  LaurentPoly base = f;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

/// f / g when g divides f in Z[A^{±1}], nothing otherwise.
inline std::optional<LaurentPoly> divide_exact(LaurentPoly f, const LaurentPoly& g) {
  if (g.is_zero()) return std::nullopt;
  LaurentPoly q;
  if (f.is_zero()) return q;
  const int lowest = f.min_exponent() - g.min_exponent();
  const int ge = g.max_exponent();
  const Coeff& gc = g.terms().rbegin()->second;
  while (!f.is_zero()) {
    const int e = f.max_exponent() - ge;
    if (e < lowest) return std::nullopt;
    const Coeff& fc = f.terms().rbegin()->second;
    if (!mpz_divisible_p(fc.get_mpz_t(), gc.get_mpz_t())) return std::nullopt;
    LaurentPoly term = LaurentPoly::monomial(Coeff(fc / gc), e);
    f -= term * g;
    q += term;
  }
  return q;
}

/// The loop value -A^2 - A^-2.
inline const LaurentPoly& delta() {
  static const LaurentPoly d = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  return d;
}

/// delta^n, cached since the state sums request the same small powers repeatedly.
inline LaurentPoly delta_pow(unsigned n) {
  thread_local std::map<unsigned, LaurentPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache.emplace(n, pow(delta(), n)).first->second;
}

/// Framing factor (-A^3)^k for any integer k.
inline LaurentPoly framing_factor(int k) {
  return LaurentPoly::monomial(k % 2 == 0 ? 1 : -1, 3 * k);
}

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const Coeff magnitude = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += magnitude.get_str();
      continue;
    }
    if (magnitude != 1) out += magnitude.get_str() + "*";
    out += 'A';
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace detail {

class PolyLexer {
public:
  explicit PolyLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in polynomial '" + std::string(s_) + "'", 1, pos_ + 1);
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(std::string_view text) {
  detail::PolyLexer lex(text);
  LaurentPoly result;
  if (lex.done()) lex.fail("empty input");
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    if (lex.accept('+')) {
      sign = 1;
    } else if (lex.accept('-')) {
      sign = -1;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;

    Coeff c = 1;
    bool have_number = false;
    if (lex.at_digit()) {
      c = Coeff(lex.digits());
      have_number = true;
    }
    int exponent = 0;
    bool have_var = false;
    if (have_number && lex.peek() == '*') {
      lex.accept('*');
      if (lex.peek() != 'A') lex.fail("expected 'A' after '*'");
    }
    if (lex.accept('A')) {
      have_var = true;
      exponent = 1;
      if (lex.accept('^')) {
        int esign = 1;
        if (lex.accept('-')) esign = -1;
        if (!lex.at_digit()) lex.fail("expected exponent");
        exponent = esign * std::stoi(lex.digits());
      }
    }
    if (!have_number && !have_var) lex.fail("expected term");
    result.add_term(exponent, sign * c);
  }
  return result;
}

}  // namespace kbsm
