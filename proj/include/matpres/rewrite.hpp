#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matpres/freepoly.hpp"

namespace matpres {

/// Oriented monic relation lhs -> rhs, standing for the ideal element lhs - rhs.
struct RewriteRule {
  std::string id;
  Word lhs;
  FreePoly rhs;

  FreePoly relator() const;
  /// False when lhs still occurs in some word of rhs. Allowed, but reported.
  bool rhs_reduced() const;
};

class RewriteSystem {
 public:
  RewriteSystem(CoeffRing ring, unsigned alphabet) : ring_(std::move(ring)), alphabet_(alphabet) {}

  /// Rejects empty lhs, duplicate ids and foreign coefficient rings.
  void add_rule(RewriteRule rule);
  void remove_rule(std::size_t index);
  void set_rhs(std::size_t index, FreePoly rhs);

  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const RewriteRule* find(std::string_view id) const;
  const CoeffRing& ring() const noexcept { return ring_; }
  unsigned alphabet() const noexcept { return alphabet_; }

  FreePoly zero() const { return FreePoly(ring_, alphabet_); }

  friend bool operator==(const RewriteSystem& a, const RewriteSystem& b);

 private:
  CoeffRing ring_;
  unsigned alphabet_;
  std::vector<RewriteRule> rules_;
};

struct Budget {
  std::size_t max_steps = 1'000'000;
};

/// Redex selection: the deglex-greatest reducible word, then the first rule
/// (in system order) whose lhs occurs in it, then its leftmost occurrence.
/// `Rightmost` only changes the last choice; on the Kassabov systems it
/// follows the inner-bracket-first order of the hand proofs and avoids an
/// exponential number of steps.
enum class RedexStrategy { Leftmost, Rightmost };

struct Redex {
  Word word;
  std::size_t position = 0;
  std::size_t rule = 0;
};

std::optional<Redex> find_redex(const FreePoly& p, const RewriteSystem& sys,
                                RedexStrategy strategy = RedexStrategy::Leftmost);

/// before - after == coeff * left * relator(rule) * right
struct TraceStep {
  std::string rule;
  Word left;
  Word right;
  Scalar coeff;
  FreePoly after;
};

/// Replayable certificate that `end()` lies in the ideal coset of `start()`.
class ReductionTrace {
 public:
  explicit ReductionTrace(FreePoly start) : start_(std::move(start)) {}

  const FreePoly& start() const noexcept { return start_; }
  const FreePoly& end() const noexcept { return steps_.empty() ? start_ : steps_.back().after; }
  const std::vector<TraceStep>& steps() const noexcept { return steps_; }

  /// Appends the step subtracting coeff * left * relator * right from end().
  void push(std::string rule, const FreePoly& relator, Word left, Word right, Scalar coeff);
  void push(const RewriteSystem& sys, std::size_t rule, Word left, Word right, Scalar coeff);

  /// Appends a step whose result is already known; nothing is recomputed.
  void push_unchecked(TraceStep step) { steps_.push_back(std::move(step)); }

  /// Concatenates `next`, whose start must equal end().
  void append(const ReductionTrace& next);

  /// The same derivation read from end() back to start().
  ReductionTrace reversed() const;
  /// left * (every polynomial) * right
  ReductionTrace multiplied(const Word& left, const Word& right) const;
  /// c * (every polynomial)
  ReductionTrace scaled(const Scalar& c) const;

  /// Line format:
  ///   trace ring=<ring> gens=<d>
  ///   start: <poly>
  ///   step <k>: rule=<id> left="<word>" right="<word>" coeff=<c>
  ///     <poly after step k>
  ///   end: <poly>
  std::string to_text() const;

 private:
  FreePoly start_;
  std::vector<TraceStep> steps_;
};

enum class ReductionStatus { Normal, BudgetExceeded };

struct Reduction {
  FreePoly result;
  ReductionTrace trace;
  ReductionStatus status = ReductionStatus::Normal;
  std::size_t steps = 0;

  bool ok() const noexcept { return status == ReductionStatus::Normal; }
};

enum class TraceMode { Record, Discard };

/// Rewrites until no redex remains. Never assumes termination: once `budget`
/// steps have been taken and a redex is still present the partial result is
/// returned with BudgetExceeded.
Reduction normalize(const FreePoly& p, const RewriteSystem& sys, Budget budget = {},
                    TraceMode mode = TraceMode::Record, RedexStrategy strategy = RedexStrategy::Leftmost);

/// Runs both redex strategies under growing step caps (64, 256, ...) and
/// records the first reduction that finishes. Every step is still a plain
/// rule application, so the trace replays like any other; on a confluent
/// system the normal form does not depend on the strategy picked.
Reduction normalize_adaptive(const FreePoly& p, const RewriteSystem& sys, Budget budget = {});

/// Index of the first step whose before - after differs from
/// coeff * left * relator * right, or of a step naming an unknown relator.
/// `relator` maps a rule id to its relator, or nullptr.
std::optional<std::size_t> first_invalid_step(const ReductionTrace& trace,
                                              const std::function<const FreePoly*(const std::string&)>& relator);

/// The sigma-image of a derivation: step (u, v, c) becomes (sigma(v), sigma(u), c)
/// with rule id `prefix + id`. Valid for the sigma-image relators.
ReductionTrace sigma_trace(const ReductionTrace& trace, const std::string& prefix);

struct CriticalPair {
  Word overlap;
  std::size_t first = 0;   // rule applied at first_pos
  std::size_t second = 0;  // rule applied at second_pos
  std::size_t first_pos = 0;
  std::size_t second_pos = 0;
  FreePoly first_reduct;
  FreePoly second_reduct;
};

/// All suffix/prefix overlaps and containments between ordered rule pairs,
/// each with its two one-step reducts of the overlap word.
std::vector<CriticalPair> critical_pairs(const RewriteSystem& sys);

enum class PairStatus { Joined, NotJoined, BudgetExceeded };

struct PairVerdict {
  CriticalPair pair;
  PairStatus status = PairStatus::Joined;
  FreePoly first_normal;
  FreePoly second_normal;
};

struct ConfluenceReport {
  std::vector<PairVerdict> pairs;
  bool locally_confluent() const;
};

ConfluenceReport check_local_confluence(const RewriteSystem& sys, Budget budget = {});

enum class CompletionFailure { None, NonMonicLeadingTerm, RuleCapExceeded, BudgetExceeded };

struct CompletionResult {
  RewriteSystem system;
  CompletionFailure failure = CompletionFailure::None;
  std::string message;
  std::size_t rules_added = 0;

  bool ok() const noexcept { return failure == CompletionFailure::None; }
};

/// Letter order under which every rule of `sys` is deglex-oriented, trying
/// the identity and then the reversed precedence. Falls back to identity.
LetterOrder orienting_order(const RewriteSystem& sys);

/// Bounded Knuth-Bendix style completion. New rules come from non-joinable
/// critical pairs, oriented by their leading word under orienting_order and
/// made monic; a non-unit leading coefficient aborts.
CompletionResult complete(const RewriteSystem& sys, Budget budget = {}, std::size_t max_rules = 64);

struct IrreducibleCount {
  std::size_t count = 0;  // words of length <= max_length avoiding every lhs
  bool finite = false;    // no irreducible word of length max_length + 1 exists
  std::vector<Word> words;
};

IrreducibleCount irreducible_words(const RewriteSystem& sys, std::size_t max_length);

}  // namespace matpres
