#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matpres/scalar.hpp"
#include "matpres/word.hpp"

namespace matpres {

/// Element of the free associative unital ring base<g0, ..., g(d-1)>.
///
/// Terms are kept in a word -> coefficient map ordered by deglex, with zero
/// coefficients never stored, so structural equality is ring equality.
class FreePoly {
 public:
  using Terms = std::map<Word, Scalar, DeglexLess>;

  FreePoly() : FreePoly(CoeffRing::integers(), 2) {}
  FreePoly(CoeffRing ring, unsigned alphabet);

  static FreePoly constant(const CoeffRing& ring, unsigned alphabet, const Scalar& c);
  static FreePoly monomial(const CoeffRing& ring, unsigned alphabet, const Word& w);
  static FreePoly monomial(const CoeffRing& ring, unsigned alphabet, const Word& w, const Scalar& c);

  const CoeffRing& ring() const noexcept { return ring_; }
  unsigned alphabet() const noexcept { return alphabet_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Length of the longest word; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }
  Scalar coefficient(const Word& w) const;

  /// this += c * w
  void accumulate(const Word& w, const Scalar& c);

  FreePoly& operator+=(const FreePoly& q);
  FreePoly& operator-=(const FreePoly& q);
  FreePoly operator-() const;
  friend FreePoly operator+(FreePoly p, const FreePoly& q) { return p += q; }
  friend FreePoly operator-(FreePoly p, const FreePoly& q) { return p -= q; }
  friend FreePoly operator*(const FreePoly& p, const FreePoly& q);

  /// u * this * v
  FreePoly multiplied(const Word& left, const Word& right) const;

  friend bool operator==(const FreePoly& p, const FreePoly& q) {
    return p.ring_ == q.ring_ && p.alphabet_ == q.alphabet_ && p.terms_ == q.terms_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const FreePoly& q) const;

  CoeffRing ring_;
  unsigned alphabet_;
  Terms terms_;
};

FreePoly scale(const Scalar& c, const FreePoly& p);
FreePoly pow(const FreePoly& p, unsigned k);

/// The anti-automorphism fixing coefficients, reversing every word and
/// swapping x and y. Only defined on the two-letter alphabet.
FreePoly sigma(const FreePoly& p);

/// Parses the text syntax: terms joined by +/-, each an optional integer
/// coefficient times `*`-separated powers such as `3*x^2*y`; `1` is the unit.
/// Dual coefficients are written `(a+bt)`. `names`, when given, replaces the
/// canonical generator names (x, y or g0, g1, ...).
FreePoly parse_poly(std::string_view text, const CoeffRing& ring, unsigned alphabet,
                    const std::vector<std::string>& names = {});

/// Convenience for the common integer, two-letter case.
FreePoly poly(std::string_view text);

}  // namespace matpres
