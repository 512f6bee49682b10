#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matpres/freepoly.hpp"
#include "matpres/lattice.hpp"
#include "matpres/matrix.hpp"

namespace matpres {

/// Element (r, m) of Mat_n(Z) + M with M = (Mat_n(Z) (x) Mat_n(Z))^d free on
/// 1 (x) 1 in each copy. Copy s holds n^4 coordinates; e_{i,j} (x) e_{k,l}
/// sits at ((i*n + j)*n + k)*n + l.
struct TrivialExtElement {
  Matrix r;
  std::vector<IntVector> m;

  static TrivialExtElement zero(std::size_t n, std::size_t d);
  /// (a, 1 (x) 1 in copy s): the lift of a generator.
  static TrivialExtElement lift(const Matrix& a, std::size_t s, std::size_t d);

  std::size_t n() const { return r.dim(); }
  std::size_t d() const { return m.size(); }
  /// Coordinates (r entries, then each copy of M) in Z^(n^2 + d n^4).
  IntVector flatten() const;
  static TrivialExtElement unflatten(const IntVector& v, std::size_t n, std::size_t d);

  friend bool operator==(const TrivialExtElement& a, const TrivialExtElement& b) { return a.r == b.r && a.m == b.m; }
};

TrivialExtElement operator+(const TrivialExtElement& u, const TrivialExtElement& v);
/// (r, m)(r', m') = (r r', r m' + m r'); M * M = 0.
TrivialExtElement trivial_ext_mul(const TrivialExtElement& u, const TrivialExtElement& v);

struct SubringClosure {
  IntegerLattice lattice;
  std::size_t rounds = 0;
};

/// Additive group of the subring generated by `gens` (and 1 when asked).
/// The subring is spanned by words in the generators, so the closure only
/// multiplies new elements by the generators on both sides until nothing new
/// appears.
SubringClosure subring_closure(const std::vector<TrivialExtElement>& gens, bool include_unit);

/// Vectors of the lattice with vanishing Mat_n(Z) part.
IntegerLattice intersect_with_M(const IntegerLattice& lat, std::size_t n, std::size_t d);

struct Theorem3Report {
  std::size_t n = 0, d = 0;
  std::string generators;
  std::size_t rounds = 0;
  std::size_t closure_rank = 0;
  std::size_t intersection_rank = 0;
  bool divisible = false;          // intersection rank is a multiple of n^2
  std::size_t inferred_rank_L = 0;  // intersection rank / n^2 (rounded down)
  std::size_t bound = 0;            // n^2 (d - 1) + n
  bool meets_bound = false;
  std::size_t weak_bound = 0;  // n^2 (d - 1)
  bool exceeds_weak_bound = false;
  /// intersection rank > n^4 (d - 1): d - 1 bimodule generators cannot
  /// account for it, so every presentation on these generators needs >= d relations.
  bool corollary = false;
  double seconds = 0;

  std::string to_json() const;
};

/// Throws std::invalid_argument unless `mats` generate Mat_n(Z).
Theorem3Report theorem3_check(std::size_t n, const std::vector<Matrix>& mats, std::string description = {});

struct WitnessTerm {
  BigInt coeff;
  // Generator term coeff * left * gens[gen] * right, or, when `product` is
  // set, coeff * (u1 r1 v1) * (u2 r2 v2) with relation indices r1, r2.
  bool product = false;
  std::size_t gen = 0;
  Word left, right;
  std::size_t r1 = 0, r2 = 0;
  Word u1, v1, u2, v2;
};

struct MembershipResult {
  bool member = false;
  std::size_t degree = 0;
  std::size_t dimension = 0;  // monomials of degree <= D
  std::size_t spanning = 0;   // spanning elements generated
  std::vector<WitnessTerm> witness;
  bool witness_valid = false;

  std::string verdict() const { return member ? "member" : "not-found-up-to-" + std::to_string(degree); }
};

/// Semi-decision of target in span{u g v} + span{(u r v)(u' r' v')} inside
/// the degree <= D part of the free ring. A found witness is expanded and
/// compared to the target; NotFound is inconclusive.
MembershipResult bimodule_membership(const FreePoly& target, const std::vector<FreePoly>& gens,
                                     const std::vector<FreePoly>& relations, std::size_t D);
/// Expands a witness back into a polynomial.
FreePoly expand_witness(const std::vector<WitnessTerm>& witness, const std::vector<FreePoly>& gens,
                        const std::vector<FreePoly>& relations, const CoeffRing& ring, unsigned alphabet);

}  // namespace matpres
