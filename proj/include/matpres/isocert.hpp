#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matpres/matrep.hpp"
#include "matpres/presentation.hpp"
#include "matpres/rewrite.hpp"

namespace matpres {

enum class Verdict { Verified, Failed, BudgetExceeded };
std::string to_string(Verdict v);

/// One checked identity. The trace (when present) starts at `input` and must
/// end at `expected`; with claim "basis-span" the end must also be a
/// combination of y^a x^b, a, b < n. Instances proved by a lemma rule carry
/// the rule id instead of a trace.
struct Instance {
  std::string label;
  std::vector<long> params;
  std::string claim = "equals";
  FreePoly input;
  FreePoly expected;
  FreePoly result;
  std::optional<ReductionTrace> trace;
  std::string rule;
  Verdict verdict = Verdict::Verified;
  std::string note;
};

struct LemmaReport {
  std::string id;
  Verdict verdict = Verdict::Verified;
  std::string summary;
  std::vector<Instance> instances;
  std::vector<std::string> notes;
  /// Short derivations always shown in reports, keyed by label.
  std::vector<std::pair<std::string, ReductionTrace>> exhibits;
  std::size_t steps = 0;

  /// Failed dominates BudgetExceeded, which dominates Verified.
  void settle();
};

/// Entry of a certificate's rule table. Base rules are the presentation's
/// relators; lemma rules are further ideal elements, each justified by a
/// trace from the relator to 0 that only uses rules listed before it.
struct CertRule {
  std::string id;
  std::string kind;  // "base" or "lemma"
  FreePoly relator;
  std::optional<ReductionTrace> justification;
  std::string statement;
};

struct CertOptions {
  Budget budget{};
  unsigned jobs = 1;
  int max_exponent = -1;  // x^k y^l x^m sweep bound; -1 means 2n
};

struct IsomorphismCertificate {
  std::string kind;  // "kassabov", "kassabov-mod" or "custom"
  int n = 0;
  BigInt modulus = 0;  // 0 for Z
  Presentation presentation;
  CertOptions options;
  std::vector<CertRule> rules;
  std::vector<LemmaReport> components;
  Verdict verdict = Verdict::Verified;
  std::string failing;  // first component that is not verified
  std::string conclusion;
  double seconds = 0;

  bool certified() const noexcept { return verdict == Verdict::Verified; }
  const LemmaReport* component(const std::string& id) const;
  /// JSON document; traces are embedded only when asked.
  std::string to_json(bool with_traces) const;
};

/// y^i x^j - y^(i+1) x^(j+1), 0 <= i, j < n.
struct MatrixUnitFamily {
  int n = 0;
  std::vector<std::vector<FreePoly>> a;
  /// a[i][j], or 0 when an index is out of range.
  FreePoly at(int i, int j) const;
};

/// Builds the family and checks that a[i][j] evaluates to e_{i,j} at the
/// shift matrices; throws std::logic_error otherwise.
MatrixUnitFamily matrix_units(int n);

/// x^k y^l x^m -> y^(l-k) x^m (l >= k) or x^(k+m-l), and the mirrored
/// y^m x^l y^k family, for 0 <= k, l <= max_exponent, l <= m <= max_exponent.
LemmaReport verify_lemma1(int n, int max_exponent, Budget budget = {}, unsigned jobs = 1);
/// y*(y^i x^j), (y^i x^j)*x, x*(y^i x^j), (y^i x^j)*y lie in the span of y^a x^b.
LemmaReport verify_span_closure(int n, Budget budget = {}, unsigned jobs = 1);
/// Shift identities of a[i][j], the n^4 products and the three decompositions.
LemmaReport verify_matrix_unit_relations(int n, Budget budget = {}, unsigned jobs = 1);

/// Full certificate that kassabov(n) presents Mat_n(Z).
IsomorphismCertificate certify_isomorphism(int n, const CertOptions& options = {});
/// Same pipeline for an arbitrary two-generator presentation over Z, checked
/// against Mat_n(Z) at the shift matrices.
IsomorphismCertificate certify_presentation(const Presentation& pr, int n, const CertOptions& options = {});
/// Certificate that kassabov_mod(n, N) presents Mat_n(Z/N).
IsomorphismCertificate verify_modN(int n, const BigInt& modulus, const CertOptions& options = {});

/// Every product a[i][j] * a[p][q] normalized directly with `normalize`
/// (no lemma rules); returns the number of mismatches with delta_{jp} a[i][q].
std::size_t count_product_mismatches(int n, Budget budget = {}, unsigned jobs = 1);

}  // namespace matpres
