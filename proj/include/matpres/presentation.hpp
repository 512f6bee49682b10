#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matpres/freepoly.hpp"
#include "matpres/rewrite.hpp"

namespace matpres {

/// Ring presentation <g0..g(d-1) | relations = 0> in the category of unital
/// rings. `orientation[i]`, when set, is the word that relation i rewrites.
struct Presentation {
  std::string name;
  CoeffRing ring;
  unsigned alphabet = 2;
  std::vector<FreePoly> relations;
  std::vector<std::optional<Word>> orientation;

  /// Mathematical content only: ring, alphabet and relation sequence.
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.ring == b.ring && a.alphabet == b.alphabet && a.relations == b.relations;
  }
};

/// <x, y | x^n, y^n, xy + y^(n-1) x^(n-1) - 1> over Z, n >= 2.
Presentation kassabov(int n);
/// <x, y | x^n, y^n, xy + (N+1) y^(n-1) x^(n-1) - 1> over Z, n, N >= 2.
Presentation kassabov_mod(int n, const BigInt& modulus);
/// <x, y | y^p - 1, x^p - x, xy - yx - y> over F_p.
Presentation guralnick(const BigInt& p);
/// <x, y | x^n - y^n, xy + y^(n-1) x^(n-1) - 1> over Z.
Presentation two_relation_variant(int n);

/// Resolves "kassabov:3", "kassabov-mod:3,12", "guralnick:2", "variant2:2".
Presentation preset(std::string_view spec);

/// Text format, statements separated by ';' or newlines, '#' comments:
///   name <label>; ring <Z|Z/N|Fp|Z[t]>; gens <names>; rel <poly>; rel <word> = <poly>
/// `rel w = q` stores the relation w - q and orients it as w -> q.
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

/// Orients every relation (hinted word, else its deglex-leading word) into
/// monic rules R1, R2, ...
RewriteSystem rewrite_system(const Presentation& p);

}  // namespace matpres
