#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "matpres/scalar.hpp"

namespace matpres {

/// Dense square matrix over a CoeffRing, 0-based indices.
class Matrix {
 public:
  Matrix() : Matrix(CoeffRing::integers(), 0) {}
  Matrix(CoeffRing ring, std::size_t n);

  static Matrix identity(const CoeffRing& ring, std::size_t n);
  /// e_{i,j}
  static Matrix unit(const CoeffRing& ring, std::size_t n, std::size_t i, std::size_t j);

  const CoeffRing& ring() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return n_; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v) { entries_[i * n_ + j] = v; }
  void set(std::size_t i, std::size_t j, long v) { entries_[i * n_ + j] = ring_.from_integer(v); }

  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix scaled(const Scalar& c) const;
  Matrix transposed() const;
  /// Same entries, viewed in another ring through CoeffRing::embed.
  Matrix embedded(const CoeffRing& target) const;

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  /// Row-major value parts; the t-parts are appended after them for dual rings.
  std::vector<BigInt> flatten() const;

  /// JSON text: array of rows of integer strings, dual entries as ["a","b"].
  std::string to_json() const;
  static Matrix from_json(const std::string& text, const CoeffRing& ring);

 private:
  void check_compatible(const Matrix& b) const;

  CoeffRing ring_;
  std::size_t n_;
  std::vector<Scalar> entries_;
};

}  // namespace matpres
