#include "matpres/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

FreePoly RewriteRule::relator() const {
  return FreePoly::monomial(rhs.ring(), rhs.alphabet(), lhs) - rhs;
}

bool RewriteRule::rhs_reduced() const {
  return std::none_of(rhs.terms().begin(), rhs.terms().end(),
                      [&](const auto& t) { return t.first.contains(lhs); });
}

void RewriteSystem::add_rule(RewriteRule rule) {
  if (rule.lhs.empty()) throw std::invalid_argument("rule '" + rule.id + "' has an empty lhs");
  if (rule.lhs.alphabet_needed() > alphabet_) throw std::invalid_argument("rule lhs outside the alphabet");
  if (!(rule.rhs.ring() == ring_) || rule.rhs.alphabet() != alphabet_) {
    throw RingMismatch("rule '" + rule.id + "' lives over a different ring");
  }
  if (find(rule.id) != nullptr) throw std::invalid_argument("duplicate rule id '" + rule.id + "'");
  rules_.push_back(std::move(rule));
}

void RewriteSystem::remove_rule(std::size_t index) { rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(index)); }

void RewriteSystem::set_rhs(std::size_t index, FreePoly rhs) { rules_.at(index).rhs = std::move(rhs); }

const RewriteRule* RewriteSystem::find(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

bool operator==(const RewriteSystem& a, const RewriteSystem& b) {
  if (!(a.ring_ == b.ring_) || a.alphabet_ != b.alphabet_ || a.rules_.size() != b.rules_.size()) return false;
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    const auto& r = a.rules_[i];
    const auto& s = b.rules_[i];
    if (r.id != s.id || !(r.lhs == s.lhs) || !(r.rhs == s.rhs)) return false;
  }
  return true;
}

std::optional<Redex> find_redex(const FreePoly& p, const RewriteSystem& sys, RedexStrategy strategy) {
  const auto& rules = sys.rules();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Word& w = it->first;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (rules[r].lhs.size() > w.size()) continue;
      std::size_t pos = strategy == RedexStrategy::Leftmost ? w.find(rules[r].lhs) : w.rfind(rules[r].lhs);
      if (pos != std::string::npos) return Redex{w, pos, r};
    }
  }
  return std::nullopt;
}

namespace {

// before - coeff * left * relator * right, with relator = lhs - rhs
void apply_rule(FreePoly& p, const RewriteRule& rule, const Word& left, const Word& right, const Scalar& coeff) {
  const CoeffRing& ring = p.ring();
  p.accumulate(left * rule.lhs * right, ring.neg(coeff));
  for (const auto& [w, d] : rule.rhs.terms()) p.accumulate(left * w * right, ring.mul(coeff, d));
}

}  // namespace

void ReductionTrace::push(std::string rule, const FreePoly& relator, Word left, Word right, Scalar coeff) {
  FreePoly after = end();
  const CoeffRing& ring = after.ring();
  for (const auto& [w, d] : relator.terms()) after.accumulate(left * w * right, ring.neg(ring.mul(coeff, d)));
  steps_.push_back({std::move(rule), std::move(left), std::move(right), std::move(coeff), std::move(after)});
}

void ReductionTrace::push(const RewriteSystem& sys, std::size_t rule, Word left, Word right, Scalar coeff) {
  const RewriteRule& r = sys.rules().at(rule);
  FreePoly after = end();
  apply_rule(after, r, left, right, coeff);
  steps_.push_back({r.id, std::move(left), std::move(right), std::move(coeff), std::move(after)});
}

void ReductionTrace::append(const ReductionTrace& next) {
  if (!(next.start() == end())) throw std::invalid_argument("trace concatenation: start does not match end");
  steps_.insert(steps_.end(), next.steps_.begin(), next.steps_.end());
}

ReductionTrace ReductionTrace::reversed() const {
  ReductionTrace r(end());
  const CoeffRing& ring = start_.ring();
  for (std::size_t k = steps_.size(); k-- > 0;) {
    const FreePoly& before = k == 0 ? start_ : steps_[k - 1].after;
    const TraceStep& s = steps_[k];
    r.steps_.push_back({s.rule, s.left, s.right, ring.neg(s.coeff), before});
  }
  return r;
}

ReductionTrace ReductionTrace::multiplied(const Word& left, const Word& right) const {
  ReductionTrace r(start_.multiplied(left, right));
  r.steps_.reserve(steps_.size());
  for (const auto& s : steps_) {
    r.steps_.push_back({s.rule, left * s.left, s.right * right, s.coeff, s.after.multiplied(left, right)});
  }
  return r;
}

ReductionTrace ReductionTrace::scaled(const Scalar& c) const {
  const CoeffRing& ring = start_.ring();
  ReductionTrace r(scale(c, start_));
  r.steps_.reserve(steps_.size());
  for (const auto& s : steps_) {
    r.steps_.push_back({s.rule, s.left, s.right, ring.mul(c, s.coeff), scale(c, s.after)});
  }
  return r;
}

std::string ReductionTrace::to_text() const {
  const CoeffRing& ring = start_.ring();
  unsigned d = start_.alphabet();
  auto word = [d](const Word& w) { return w.empty() ? std::string() : format_word(w, d); };
  std::string out = "trace ring=" + ring.name() + " gens=" + std::to_string(d) + "\n";
  out += "start: " + start_.to_string() + "\n";
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const auto& s = steps_[k];
    out += "step " + std::to_string(k + 1) + ": rule=" + s.rule + " left=\"" + word(s.left) + "\" right=\"" +
           word(s.right) + "\" coeff=" + ring.format(s.coeff) + "\n";
    out += "  " + s.after.to_string() + "\n";
  }
  out += "end: " + end().to_string() + "\n";
  return out;
}

Reduction normalize(const FreePoly& p, const RewriteSystem& sys, Budget budget, TraceMode mode,
                    RedexStrategy strategy) {
  if (!(p.ring() == sys.ring()) || p.alphabet() != sys.alphabet()) {
    throw RingMismatch("polynomial and rewrite system live over different rings");
  }
  Reduction red{p, ReductionTrace(p), ReductionStatus::Normal};
  FreePoly& cur = red.result;
  std::size_t steps = 0;
  while (auto rx = find_redex(cur, sys, strategy)) {
    if (steps >= budget.max_steps) {
      red.status = ReductionStatus::BudgetExceeded;
      break;
    }
    const RewriteRule& rule = sys.rules()[rx->rule];
    Scalar c = cur.coefficient(rx->word);
    Word left = rx->word.sub(0, rx->position);
    Word right = rx->word.sub(rx->position + rule.lhs.size());
    if (mode == TraceMode::Record) {
      red.trace.push(sys, rx->rule, left, right, c);
      cur = red.trace.end();
    } else {
      apply_rule(cur, rule, left, right, c);
    }
    ++steps;
  }
  red.steps = steps;
  return red;
}

Reduction normalize_adaptive(const FreePoly& p, const RewriteSystem& sys, Budget budget) {
  std::size_t cap = 64;
  for (;;) {
    std::size_t limit = std::min(cap, budget.max_steps);
    for (RedexStrategy s : {RedexStrategy::Rightmost, RedexStrategy::Leftmost}) {
      if (normalize(p, sys, {limit}, TraceMode::Discard, s).ok()) {
        return normalize(p, sys, {limit}, TraceMode::Record, s);
      }
    }
    if (limit == budget.max_steps) return normalize(p, sys, budget, TraceMode::Record, RedexStrategy::Rightmost);
    cap = cap > budget.max_steps / 4 ? budget.max_steps : cap * 4;
  }
}

std::optional<std::size_t> first_invalid_step(const ReductionTrace& trace,
                                              const std::function<const FreePoly*(const std::string&)>& relator) {
  const FreePoly* before = &trace.start();
  const CoeffRing& ring = before->ring();
  for (std::size_t k = 0; k < trace.steps().size(); ++k) {
    const TraceStep& s = trace.steps()[k];
    const FreePoly* rel = relator(s.rule);
    if (rel == nullptr) return k;
    FreePoly expect = *before - scale(s.coeff, rel->multiplied(s.left, s.right));
    if (!(expect == s.after) || !(rel->ring() == ring)) return k;
    before = &s.after;
  }
  return std::nullopt;
}

ReductionTrace sigma_trace(const ReductionTrace& trace, const std::string& prefix) {
  ReductionTrace out(sigma(trace.start()));
  auto flip = [](const Word& w) {
    static constexpr unsigned swap[2] = {1, 0};
    return w.reversed().relabeled(swap);
  };
  for (const auto& s : trace.steps()) out.push_unchecked({prefix + s.rule, flip(s.right), flip(s.left), s.coeff, sigma(s.after)});
  return out;
}

namespace {

FreePoly one_step(const RewriteSystem& sys, const Word& w, std::size_t rule, std::size_t pos) {
  FreePoly p = FreePoly::monomial(sys.ring(), sys.alphabet(), w);
  const RewriteRule& r = sys.rules()[rule];
  apply_rule(p, r, w.sub(0, pos), w.sub(pos + r.lhs.size()), sys.ring().one());
  return p;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const RewriteSystem& sys) {
  std::vector<CriticalPair> out;
  const auto& rules = sys.rules();
  auto emit = [&](const Word& w, std::size_t i, std::size_t pi, std::size_t j, std::size_t pj) {
    out.push_back({w, i, j, pi, pj, one_step(sys, w, i, pi), one_step(sys, w, j, pj)});
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Word& a = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& b = rules[j].lhs;
      // containment: b occurs inside a
      if (i != j && b.size() <= a.size() && !(a == b && j < i)) {
        for (std::size_t pos = a.find(b); pos != std::string::npos; pos = a.find(b, pos + 1)) {
          emit(a, i, 0, j, pos);
        }
      }
      // proper overlap: suffix of a == prefix of b
      for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
        if (a.sub(a.size() - k) == b.sub(0, k)) emit(a * b.sub(k), i, 0, j, a.size() - k);
      }
    }
  }
  return out;
}

bool ConfluenceReport::locally_confluent() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairVerdict& v) { return v.status == PairStatus::Joined; });
}

ConfluenceReport check_local_confluence(const RewriteSystem& sys, Budget budget) {
  ConfluenceReport report;
  for (auto& pair : critical_pairs(sys)) {
    Reduction a = normalize(pair.first_reduct, sys, budget, TraceMode::Discard);
    Reduction b = normalize(pair.second_reduct, sys, budget, TraceMode::Discard);
    PairStatus status = !a.ok() || !b.ok()      ? PairStatus::BudgetExceeded
                        : a.result == b.result ? PairStatus::Joined
                                               : PairStatus::NotJoined;
    report.pairs.push_back({std::move(pair), status, std::move(a.result), std::move(b.result)});
  }
  return report;
}

LetterOrder orienting_order(const RewriteSystem& sys) {
  for (const LetterOrder& order : {LetterOrder::identity(sys.alphabet()), LetterOrder::reversed(sys.alphabet())}) {
    bool all = std::all_of(sys.rules().begin(), sys.rules().end(), [&](const RewriteRule& r) {
      return std::all_of(r.rhs.terms().begin(), r.rhs.terms().end(),
                         [&](const auto& t) { return order.compare(t.first, r.lhs) < 0; });
    });
    if (all) return order;
  }
  return LetterOrder::identity(sys.alphabet());
}

namespace {

struct Oriented {
  std::optional<RewriteRule> rule;
  bool non_monic = false;
};

Oriented orient(const FreePoly& e, const LetterOrder& order, const std::string& id) {
  const Word* lead = nullptr;
  for (const auto& [w, c] : e.terms()) {
    if (lead == nullptr || order.compare(w, *lead) > 0) lead = &w;
  }
  if (lead == nullptr) return {};
  const CoeffRing& ring = e.ring();
  Scalar lc = e.coefficient(*lead);
  if (!ring.is_unit(lc)) return {std::nullopt, true};
  FreePoly monic = scale(ring.inverse(lc), e);
  Word lhs = *lead;
  FreePoly rhs = FreePoly::monomial(ring, e.alphabet(), lhs) - monic;
  return {RewriteRule{id, lhs, std::move(rhs)}, false};
}

}  // namespace

CompletionResult complete(const RewriteSystem& input, Budget budget, std::size_t max_rules) {
  CompletionResult res{input, CompletionFailure::None, {}, 0};
  RewriteSystem& sys = res.system;
  const LetterOrder order = orienting_order(input);
  std::size_t next_id = 1;
  auto fresh_id = [&] {
    std::string id;
    do id = "C" + std::to_string(next_id++);
    while (sys.find(id) != nullptr);
    return id;
  };

  for (;;) {
    std::optional<FreePoly> pending;
    for (const auto& pair : critical_pairs(sys)) {
      Reduction a = normalize(pair.first_reduct, sys, budget, TraceMode::Discard);
      Reduction b = normalize(pair.second_reduct, sys, budget, TraceMode::Discard);
      if (!a.ok() || !b.ok()) {
        res.failure = CompletionFailure::BudgetExceeded;
        res.message = "budget exceeded joining overlap " + format_word(pair.overlap, sys.alphabet());
        return res;
      }
      if (!(a.result == b.result)) {
        pending = a.result - b.result;
        break;
      }
    }
    if (!pending) return res;

    // Add the new rule, then move every rule it makes redundant back into
    // the queue and re-reduce right-hand sides.
    std::vector<FreePoly> queue{*pending};
    while (!queue.empty()) {
      FreePoly e = std::move(queue.back());
      queue.pop_back();
      Reduction r = normalize(e, sys, budget, TraceMode::Discard);
      if (!r.ok()) {
        res.failure = CompletionFailure::BudgetExceeded;
        res.message = "budget exceeded reducing a new relation";
        return res;
      }
      if (r.result.is_zero()) continue;
      Oriented o = orient(r.result, order, fresh_id());
      if (o.non_monic) {
        res.failure = CompletionFailure::NonMonicLeadingTerm;
        res.message = "leading coefficient is not a unit in " + r.result.to_string();
        return res;
      }
      const Word lhs = o.rule->lhs;
      for (std::size_t i = sys.rules().size(); i-- > 0;) {
        if (sys.rules()[i].lhs.contains(lhs)) {
          queue.push_back(sys.rules()[i].relator());
          sys.remove_rule(i);
        }
      }
      sys.add_rule(std::move(*o.rule));
      ++res.rules_added;
      if (sys.rules().size() > max_rules) {
        res.failure = CompletionFailure::RuleCapExceeded;
        res.message = "rule cap of " + std::to_string(max_rules) + " exceeded";
        return res;
      }
      for (std::size_t i = 0; i < sys.rules().size(); ++i) {
        const RewriteRule& rule = sys.rules()[i];
        if (rule.rhs_reduced() && std::none_of(rule.rhs.terms().begin(), rule.rhs.terms().end(),
                                               [&](const auto& t) { return t.first.contains(lhs); })) {
          continue;
        }
        Reduction nr = normalize(rule.rhs, sys, budget, TraceMode::Discard);
        if (!nr.ok()) {
          res.failure = CompletionFailure::BudgetExceeded;
          res.message = "budget exceeded inter-reducing rule " + rule.id;
          return res;
        }
        sys.set_rhs(i, std::move(nr.result));
      }
    }
  }
}

IrreducibleCount irreducible_words(const RewriteSystem& sys, std::size_t max_length) {
  IrreducibleCount out;
  std::vector<Word> level{Word{}};
  for (std::size_t len = 0;; ++len) {
    if (level.empty()) {
      out.finite = true;
      break;
    }
    if (len > max_length) break;
    out.count += level.size();
    out.words.insert(out.words.end(), level.begin(), level.end());
    std::vector<Word> next;
    for (const Word& w : level) {
      for (unsigned g = 0; g < sys.alphabet(); ++g) {
        Word ext = w * Word::power({g}, 1);
        bool reducible = std::any_of(sys.rules().begin(), sys.rules().end(), [&](const RewriteRule& r) {
          return r.lhs.size() <= ext.size() && ext.sub(ext.size() - r.lhs.size()) == r.lhs;
        });
        if (!reducible) next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace matpres
