#include "matpres/scalar.hpp"

#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

BigInt parse_bigint(std::string_view text) {
  BigInt v;
  if (text.empty() || v.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

bool is_probable_prime(const BigInt& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

CoeffRing CoeffRing::integers() { return CoeffRing{}; }

CoeffRing CoeffRing::modular(const BigInt& n) {
  if (n < 2) throw std::invalid_argument("Z/N requires N >= 2");
  CoeffRing r;
  r.modulus_ = n;
  return r;
}

CoeffRing CoeffRing::prime_field(const BigInt& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("F_p requires p prime, got " + p.get_str());
  CoeffRing r = modular(p);
  r.prime_ = true;
  return r;
}

CoeffRing CoeffRing::dual() const {
  if (dual_) throw std::invalid_argument("ring already has t adjoined");
  CoeffRing r = *this;
  r.dual_ = true;
  return r;
}

CoeffRing CoeffRing::base() const {
  CoeffRing r = *this;
  r.dual_ = false;
  return r;
}

BigInt CoeffRing::reduce(const BigInt& v) const {
  if (modulus_ == 0) return v;
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Scalar CoeffRing::from_integer(const BigInt& v) const { return {reduce(v), 0}; }

Scalar CoeffRing::make(const BigInt& value, const BigInt& tpart) const {
  if (!dual_ && tpart != 0) throw std::invalid_argument("t-part given outside a dual ring");
  return {reduce(value), reduce(tpart)};
}

Scalar CoeffRing::add(const Scalar& a, const Scalar& b) const {
  return {reduce(a.value + b.value), dual_ ? reduce(a.tpart + b.tpart) : BigInt(0)};
}

Scalar CoeffRing::sub(const Scalar& a, const Scalar& b) const {
  return {reduce(a.value - b.value), dual_ ? reduce(a.tpart - b.tpart) : BigInt(0)};
}

Scalar CoeffRing::mul(const Scalar& a, const Scalar& b) const {
  if (!dual_) return {reduce(a.value * b.value), 0};
  return {reduce(a.value * b.value), reduce(a.value * b.tpart + a.tpart * b.value)};
}

Scalar CoeffRing::neg(const Scalar& a) const {
  return {reduce(-a.value), dual_ ? reduce(-a.tpart) : BigInt(0)};
}

bool CoeffRing::is_unit(const Scalar& a) const {
  if (modulus_ == 0) return a.value == 1 || a.value == -1;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.value.get_mpz_t(), modulus_.get_mpz_t());
  return g == 1;
}

Scalar CoeffRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw std::domain_error("not a unit: " + format(a));
  BigInt inv;
  if (modulus_ == 0) {
    inv = a.value;
  } else {
    mpz_invert(inv.get_mpz_t(), a.value.get_mpz_t(), modulus_.get_mpz_t());
  }
  // (a + bt)^-1 = a^-1 - b a^-2 t
  return {reduce(inv), dual_ ? reduce(-a.tpart * inv * inv) : BigInt(0)};
}

Scalar CoeffRing::embed(const Scalar& a, const CoeffRing& from) const {
  if (from == *this) return a;
  if (from.is_integers()) return from_integer(a.value);
  if (from == base()) return {a.value, 0};
  throw RingMismatch("cannot map " + from.name() + " into " + name());
}

std::string CoeffRing::name() const {
  std::string s;
  if (modulus_ == 0) {
    s = "Z";
  } else if (prime_) {
    s = "F" + modulus_.get_str();
  } else {
    s = "Z/" + modulus_.get_str();
  }
  return dual_ ? s + "[t]" : s;
}

std::string CoeffRing::format(const Scalar& a) const {
  if (!dual_) return a.value.get_str();
  return "(" + a.value.get_str() + (a.tpart < 0 ? "-" : "+") + BigInt(abs(a.tpart)).get_str() + "t)";
}

CoeffRing parse_ring(std::string_view text) {
  bool dual = false;
  if (text.size() >= 3 && text.substr(text.size() - 3) == "[t]") {
    dual = true;
    text.remove_suffix(3);
  }
  CoeffRing r;
  if (text == "Z") {
    r = CoeffRing::integers();
  } else if (text.starts_with("Z/")) {
    r = CoeffRing::modular(parse_bigint(text.substr(2)));
  } else if (text.starts_with("F") && text.size() > 1) {
    r = CoeffRing::prime_field(parse_bigint(text.substr(1)));
  } else {
    throw std::invalid_argument("unknown coefficient ring '" + std::string(text) + "'");
  }
  return dual ? r.dual() : r;
}

}  // namespace matpres
