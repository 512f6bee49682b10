#include <doctest.h>

#include <set>

#include "matpres/matrep.hpp"
#include "matpres/presentation.hpp"
#include "matpres/rewrite.hpp"

using namespace matpres;

namespace {

RewriteSystem K(int n) { return rewrite_system(kassabov(n)); }

RewriteSystem single(const char* lhs, const char* rhs, const CoeffRing& ring = CoeffRing::integers()) {
  RewriteSystem s(ring, 2);
  s.add_rule({"R1", parse_word(lhs, 2), parse_poly(rhs, ring, 2)});
  return s;
}

}  // namespace

TEST_CASE("kassabov rules") {
  RewriteSystem k = K(3);
  REQUIRE(k.rules().size() == 3);
  CHECK(k.rules()[0].lhs == parse_word("x^3", 2));
  CHECK(k.rules()[1].lhs == parse_word("y^3", 2));
  CHECK(k.rules()[2].lhs == parse_word("x*y", 2));
  CHECK(k.rules()[2].rhs == poly("1 - y^2*x^2"));
  CHECK(k.rules()[2].relator() == poly("x*y + y^2*x^2 - 1"));
}

TEST_CASE("find_redex") {
  RewriteSystem k = K(2);
  auto r = find_redex(poly("x*y"), k);
  REQUIRE(r);
  CHECK(r->word == parse_word("x*y", 2));
  CHECK(r->position == 0);
  CHECK(r->rule == 2);
  CHECK_FALSE(find_redex(poly("1 - y*x"), k));
  auto r3 = find_redex(poly("x^3 + x*y"), k);
  REQUIRE(r3);
  CHECK(r3->word == parse_word("x^3", 2));
  CHECK(r3->position == 0);
  CHECK(r3->rule == 0);
  auto rr = find_redex(poly("x^3"), k, RedexStrategy::Rightmost);
  REQUIRE(rr);
  CHECK(rr->position == 1);
}

TEST_CASE("normalize") {
  CHECK(normalize(poly("x*y*x"), K(2)).result == poly("x"));
  CHECK(normalize(poly("x*y^2*x^2"), K(3)).result == poly("y*x^2"));
  CHECK(normalize(poly("x^2*y*x"), K(3)).result == poly("x^2"));
  for (int n = 2; n <= 5; ++n) {
    CHECK(normalize(pow(poly("x"), n), K(n)).result.is_zero());
  }
  Reduction b = normalize(poly("x*y"), K(2), Budget{0});
  CHECK(b.status == ReductionStatus::BudgetExceeded);
  CHECK(b.result == poly("x*y"));
  Reduction one = normalize(poly("1"), K(2), Budget{0});
  CHECK(one.ok());
}

TEST_CASE("normal forms agree with the matrix oracle") {
  for (int n = 2; n <= 4; ++n) {
    RewriteSystem k = K(n);
    Assignment s = shift_assignment(n);
    for (const char* text : {"x*y*x*y", "y^2*x*y*x^2", "x*y^3*x*y*x", "y*x*y*x*y*x"}) {
      FreePoly p = poly(text);
      Reduction r = normalize_adaptive(p, k);
      REQUIRE(r.ok());
      CHECK(eval_poly(r.result, s) == eval_poly(p, s));
      CHECK(normalize(p, k, {}, TraceMode::Discard, RedexStrategy::Rightmost).result == r.result);
    }
  }
}

TEST_CASE("trace bookkeeping") {
  RewriteSystem k = K(2);
  Reduction r = normalize(poly("x*y*x - 2*y*x*y"), k);
  REQUIRE(r.ok());
  CHECK(r.steps == r.trace.steps().size());
  CHECK(r.trace.end() == r.result);
  std::map<std::string, FreePoly> rel;
  for (const auto& rule : k.rules()) rel.emplace(rule.id, rule.relator());
  auto lookup = [&](const std::string& id) -> const FreePoly* {
    auto it = rel.find(id);
    return it == rel.end() ? nullptr : &it->second;
  };
  CHECK_FALSE(first_invalid_step(r.trace, lookup));
  CHECK_FALSE(first_invalid_step(r.trace.reversed(), lookup));
  CHECK_FALSE(first_invalid_step(r.trace.multiplied(parse_word("y", 2), parse_word("x", 2)), lookup));
  ReductionTrace bad = r.trace;
  TraceStep tampered = bad.steps().back();
  tampered.after += poly("x");
  bad.push_unchecked(tampered);
  CHECK(first_invalid_step(bad, lookup).has_value());
}

TEST_CASE("critical pairs") {
  auto pairs = critical_pairs(K(2));
  std::set<std::string> overlaps;
  for (const auto& p : pairs) overlaps.insert(format_word(p.overlap, 2));
  CHECK(pairs.size() == 4);
  CHECK(overlaps == std::set<std::string>{"x^3", "y^3", "x^2*y", "x*y^2"});
  CHECK(critical_pairs(single("x*y", "0")).empty());
  CHECK(critical_pairs(single("x^2", "0")).size() == 1);
}

TEST_CASE("local confluence") {
  CHECK(check_local_confluence(K(2)).locally_confluent());
  CHECK(check_local_confluence(K(3)).locally_confluent());
  RewriteSystem s = single("x*y", "1");
  s.add_rule({"R2", parse_word("y*x", 2), poly("0")});
  ConfluenceReport rep = check_local_confluence(s);
  CHECK_FALSE(rep.locally_confluent());
  bool saw = false;
  for (const auto& v : rep.pairs) {
    if (format_word(v.pair.overlap, 2) == "x*y*x") {
      saw = true;
      CHECK(v.status == PairStatus::NotJoined);
    }
  }
  CHECK(saw);
}

TEST_CASE("completion") {
  CompletionResult k2 = complete(K(2));
  REQUIRE(k2.ok());
  CHECK(k2.system == K(2));
  CompletionResult q = complete(single("x^2", "x + 1"));
  REQUIRE(q.ok());
  CHECK(q.system.rules().size() == 1);

  CompletionResult g = complete(rewrite_system(guralnick(2)));
  REQUIRE(g.ok());
  IrreducibleCount c = irreducible_words(g.system, 6);
  CHECK(c.finite);
  std::set<std::string> words;
  for (const auto& w : c.words) words.insert(format_word(w, 2));
  CHECK(words == std::set<std::string>{"1", "x", "y", "y*x"});
}

TEST_CASE("completion failure modes") {
  RewriteSystem s(CoeffRing::integers(), 2);
  s.add_rule({"R1", parse_word("x*y", 2), poly("2*y*x")});
  s.add_rule({"R2", parse_word("y*x", 2), poly("3*x")});
  CompletionResult r = complete(s, Budget{10'000}, 8);
  CHECK(r.failure == CompletionFailure::NonMonicLeadingTerm);
}

TEST_CASE("rule table validation") {
  RewriteSystem s(CoeffRing::integers(), 2);
  CHECK_THROWS(s.add_rule({"R1", Word{}, poly("x")}));
  s.add_rule({"R1", parse_word("x", 2), poly("0")});
  CHECK_THROWS(s.add_rule({"R1", parse_word("y", 2), poly("0")}));
  CHECK_THROWS(s.add_rule({"R2", parse_word("y", 2), parse_poly("1", CoeffRing::modular(5), 2)}));
}
