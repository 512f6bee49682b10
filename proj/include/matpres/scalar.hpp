#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace matpres {

using BigInt = mpz_class;

BigInt parse_bigint(std::string_view text);
bool is_probable_prime(const BigInt& p);

/// Coefficient value. `tpart` is the coefficient of t in the dual rings
/// base[t]/(t^2) and stays zero everywhere else.
struct Scalar {
  BigInt value;
  BigInt tpart;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value == b.value && a.tpart == b.tpart;
  }
};

/// Runtime description of one of the supported coefficient rings:
/// Z, Z/N, F_p, and base[t]/(t^2) over Z or Z/N.
///
/// All arithmetic goes through the ring so that values always sit at their
/// canonical representative (residues in [0, N)).
class CoeffRing {
 public:
  static CoeffRing integers();
  /// Z/N for N >= 2.
  static CoeffRing modular(const BigInt& n);
  /// F_p; rejects composite p.
  static CoeffRing prime_field(const BigInt& p);

  /// base[t]/(t^2). Adjoining t twice is rejected.
  CoeffRing dual() const;
  /// The same ring with t dropped.
  CoeffRing base() const;

  bool is_integers() const { return modulus_ == 0 && !dual_; }
  bool is_dual() const { return dual_; }
  bool is_prime_field() const { return prime_; }
  /// Characteristic of the base ring; 0 for Z.
  const BigInt& modulus() const { return modulus_; }

  Scalar zero() const { return {}; }
  Scalar one() const { return from_integer(1); }
  Scalar from_integer(const BigInt& v) const;
  Scalar make(const BigInt& value, const BigInt& tpart) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;

  bool is_zero(const Scalar& a) const { return a.value == 0 && a.tpart == 0; }
  bool is_one(const Scalar& a) const { return a.value == 1 && a.tpart == 0; }
  bool is_unit(const Scalar& a) const;
  /// Throws std::domain_error when `a` is not a unit.
  Scalar inverse(const Scalar& a) const;

  /// Image of an element of `from` under the canonical map; only Z -> anything
  /// and base -> base[t] (plus the identity) are supported.
  Scalar embed(const Scalar& a, const CoeffRing& from) const;

  /// "Z", "Z/6", "F3", "Z[t]", "Z/6[t]".
  std::string name() const;
  std::string format(const Scalar& a) const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.modulus_ == b.modulus_ && a.dual_ == b.dual_ && a.prime_ == b.prime_;
  }

 private:
  BigInt reduce(const BigInt& v) const;

  BigInt modulus_{0};
  bool dual_{false};
  bool prime_{false};
};

/// Parses a ring name as produced by CoeffRing::name ("Fp" form accepted as "F<p>").
CoeffRing parse_ring(std::string_view text);

}  // namespace matpres
