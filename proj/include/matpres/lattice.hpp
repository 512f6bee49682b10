#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "matpres/scalar.hpp"

namespace matpres {

using IntVector = std::vector<BigInt>;
/// Sparse integer combination of inserted generators, keyed by insertion index.
using Combination = std::map<std::size_t, BigInt>;

/// Subgroup of Z^m kept as a row echelon basis, built by incremental
/// insertion. basis() returns the canonical Hermite normal form.
///
/// With tracking on, every row remembers how it was combined from the
/// inserted generators, which gives membership witnesses and the relation
/// lattice (kernel) among the generators.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t ambient, bool track = false) : ambient_(ambient), track_(track) {}

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t generators() const noexcept { return inserted_; }
  bool tracking() const noexcept { return track_; }

  /// Adds v to the generating set. Returns true when the lattice grew.
  bool insert(IntVector v);
  bool contains(const IntVector& v) const;
  /// Coefficients c with v = sum c[k] * generator[k]; tracking only.
  std::optional<Combination> express(const IntVector& v) const;

  /// Canonical HNF rows: positive pivots, entries above each pivot in [0, pivot).
  std::vector<IntVector> basis() const;
  /// Rows whose first `column` coordinates vanish: a basis of the intersection
  /// with the coordinate subspace {v : v[0..column) = 0}.
  IntegerLattice tail(std::size_t column) const;
  /// Relations sum c[k] * generator[k] = 0 found while inserting; they span
  /// all relations when tracking has been on from the start.
  const std::vector<Combination>& kernel() const noexcept { return kernel_; }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis() == b.basis();
  }

 private:
  struct Row {
    IntVector v;
    Combination combo;
  };
  void reduce_right(Row& row, std::size_t pivot) const;

  std::size_t ambient_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;  // keyed by pivot column
  std::vector<Combination> kernel_;
};

}  // namespace matpres
