#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matpres/freepoly.hpp"
#include "matpres/lattice.hpp"
#include "matpres/matrix.hpp"
#include "matpres/presentation.hpp"

namespace matpres {

/// Images of the generators, all of one dimension and ring.
struct Assignment {
  std::vector<Matrix> images;

  std::size_t dim() const { return images.empty() ? 0 : images.front().dim(); }
  const CoeffRing& ring() const { return images.at(0).ring(); }
  /// JSON object generator name -> matrix.
  std::string to_json() const;
};

/// x -> X = sum e_{i,i+1}, y -> Y = sum e_{i+1,i} over Z.
Assignment shift_assignment(int n);
/// x -> Y, y -> X.
Assignment swapped(const Assignment& a);

/// Unital ring homomorphism from the free ring; coefficients are embedded
/// into the matrix ring.
Matrix eval_poly(const FreePoly& p, const Assignment& a);

struct RelationResidual {
  std::size_t index = 0;
  bool zero = false;
  Matrix residual;
};

struct RelationCheck {
  std::vector<RelationResidual> relations;
  bool all_zero() const;
};

RelationCheck check_relations(const Presentation& pr, const Assignment& a);

struct Closure {
  IntegerLattice lattice;
  std::size_t rounds = 0;
};

/// Additive subgroup of Mat_n(Z) = Z^(n^2) generated by the inputs (and the
/// identity when asked) and closed under multiplication by the inputs on
/// both sides. With modulus N > 0 the closure is taken inside Mat_n(Z/N):
/// the lattice contains N Z^(n^2) and products are reduced mod N.
Closure additive_closure(const std::vector<Matrix>& mats, bool include_unit, const BigInt& modulus = 0);

/// True iff the closure (with unit) is everything.
bool generation_check(const std::vector<Matrix>& mats, std::size_t n, const BigInt& modulus = 0);

struct DualWitness {
  Assignment assignment;  // over Z[t]
  Matrix x_power;         // image of x^n
  Matrix y_power;         // image of y^n
  std::size_t kernel_rank = 0;
};

/// Searches x -> X + tA, y -> Y + tB satisfying the two-relation variant with
/// image of x^n nonzero. The t-parts of both relations are linear in (A, B);
/// the solution lattice is computed exactly and the image of x^n is linear on
/// it, so an empty result means no such lift exists.
std::optional<DualWitness> dual_number_witness(int n);

/// x -> diag(0, 1, ..., p-1), y -> sum e_{i+1 mod p, i} over F_p.
Assignment cyclic_assignment(const BigInt& p);

}  // namespace matpres
