#pragma once

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "knotbound/error.hpp"

namespace knotbound {

using BigInt = mpz_class;

/// Laurent polynomial in one variable t with exact coefficients.
/// Zero coefficients are never stored.
template <typename Coeff = BigInt>
class LaurentPoly {
 public:
  using Terms = std::map<int, Coeff>;

  LaurentPoly() = default;
  explicit LaurentPoly(Coeff constant) { add_term(0, std::move(constant)); }

  static LaurentPoly monomial(int exponent, Coeff c) {
    LaurentPoly p;
    p.add_term(exponent, std::move(c));
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  Coeff coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(int exponent, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Coeff evaluate_at_one() const {
    Coeff sum = 0;
    for (const auto& [e, c] : terms_) sum += c;
    return sum;
  }

  /// Multiplies by t^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  LaurentPoly negated() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, Coeff(-c));
    return out;
  }

  bool is_palindromic() const {
    const int centre2 = min_exponent() + max_exponent();
    for (const auto& [e, c] : terms_) {
      if (coefficient(centre2 - e) != c) return false;
    }
    return true;
  }

  /// Multiplies by ±t^k so that the exponent range is symmetric about 0
  /// and the value at t = 1 is positive. Throws if the exponent span is odd
  /// or the polynomial vanishes at 1, neither of which happens for a knot.
  LaurentPoly normalized() const {
    if (is_zero()) throw ValidationError("cannot normalize the zero polynomial");
    const int span = max_exponent() - min_exponent();
    if (span % 2 != 0) {
      throw ValidationError("exponent span " + std::to_string(span) +
                            " is odd; not a knot Alexander polynomial");
    }
    LaurentPoly out = shifted(-(min_exponent() + span / 2));
    const Coeff at_one = out.evaluate_at_one();
    if (at_one == 0) throw ValidationError("polynomial vanishes at t = 1");
    if (at_one < 0) out = out.negated();
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + b.negated();
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, Coeff(ca * cb));
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Human form in ascending exponent order, e.g. "-t^-1 + 3 - t".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Coeff mag = c < 0 ? Coeff(-c) : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << 't';
      if (e != 1) os << '^' << e;
    }
    return os.str();
  }

 private:
  Terms terms_;
};

using IntLaurentPoly = LaurentPoly<BigInt>;

}  // namespace knotbound
