#include <doctest.h>

#include "matpres/isocert.hpp"
#include "matpres/matrep.hpp"
#include "matpres/replay.hpp"

using namespace matpres;

namespace {

RewriteSystem K(int n) { return rewrite_system(kassabov(n)); }

FreePoly nf(const FreePoly& p, int n) {
  Reduction r = normalize_adaptive(p, K(n));
  REQUIRE(r.ok());
  return r.result;
}

}  // namespace

TEST_CASE("x^k y^l x^m instances") {
  CHECK(nf(poly("x*y*x"), 2) == poly("x"));
  CHECK(nf(poly("x*y^2*x^2"), 3) == poly("y*x^2"));
  CHECK(nf(poly("x^2*y*x"), 3) == poly("x^2"));
  LemmaReport r = verify_lemma1(3, 6);
  CHECK(r.verdict == Verdict::Verified);
  bool erratum = false;
  for (const auto& note : r.notes) {
    if (note.find("witness n=3 k=1 l=2 m=2") != std::string::npos) erratum = true;
  }
  CHECK(erratum);
}

TEST_CASE("span closure") {
  CHECK(nf(poly("x*y*x"), 2) == poly("x"));
  CHECK(nf(poly("x*y^2*x"), 3) == poly("y*x - y^2*x^2"));
  CHECK(nf(poly("y*x*y"), 2) == poly("y"));
  for (int n = 2; n <= 4; ++n) {
    LemmaReport r = verify_span_closure(n);
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.instances.size() == static_cast<std::size_t>(4 * n * n));
  }
}

TEST_CASE("matrix units") {
  MatrixUnitFamily a2 = matrix_units(2);
  CHECK(a2.at(0, 0) == poly("1 - y*x"));
  CHECK(a2.at(0, 1) == poly("x - y*x^2"));
  CHECK(a2.at(2, 0).is_zero());
  CHECK(eval_poly(a2.at(0, 0), shift_assignment(2)) == Matrix::unit(CoeffRing::integers(), 2, 0, 0));
  CHECK(eval_poly(a2.at(0, 1), shift_assignment(2)) == Matrix::unit(CoeffRing::integers(), 2, 0, 1));
  MatrixUnitFamily a3 = matrix_units(3);
  CHECK(a3.at(2, 2) == poly("y^2*x^2 - y^3*x^3"));
  CHECK(eval_poly(a3.at(2, 2), shift_assignment(3)) == Matrix::unit(CoeffRing::integers(), 3, 2, 2));

  CHECK(nf(a2.at(0, 0) * poly("y"), 2).is_zero());
  CHECK(nf(a2.at(0, 1) * a2.at(1, 0) - a2.at(0, 0), 2).is_zero());
  FreePoly sum = a3.at(0, 0) + a3.at(1, 1) + a3.at(2, 2) - poly("1");
  CHECK(nf(sum, 3).is_zero());
  CHECK(verify_matrix_unit_relations(3).verdict == Verdict::Verified);
}

TEST_CASE("product table") {
  for (int n = 2; n <= 3; ++n) CHECK(count_product_mismatches(n) == 0);
}

TEST_CASE("certify") {
  for (int n : {2, 3, 5}) {
    IsomorphismCertificate c = certify_isomorphism(n);
    CHECK(c.certified());
    CHECK(c.kind == "kassabov");
    CHECK(check::check_certificate(c.to_json(true)).ok);
  }
  CHECK(certify_isomorphism(3, CertOptions{Budget{5}}).verdict == Verdict::BudgetExceeded);
  CHECK_THROWS(certify_isomorphism(1));
}

TEST_CASE("certify rejects an altered presentation") {
  Presentation bad = kassabov(2);
  bad.relations[2] = poly("x*y - 1");
  IsomorphismCertificate c = certify_presentation(bad, 2);
  CHECK_FALSE(c.certified());
  CHECK(c.kind == "custom");
  CHECK_FALSE(c.failing.empty());
}

TEST_CASE("certify over Z/N") {
  IsomorphismCertificate c = verify_modN(2, 3);
  REQUIRE(c.certified());
  const LemmaReport* tors = c.component("torsion");
  REQUIRE(tors);
  bool diag = false, na = false;
  for (const auto& [label, trace] : tors->exhibits) {
    if (label == "N*a[n-1][n-1] = 0") {
      na = true;
      CHECK(trace.start() == poly("3*y*x - 3*y^2*x^2"));
      CHECK(trace.end().is_zero());
    }
    if (label == "sum a[i][i] - (x*y + (N+1)*y^(n-1)*x^(n-1))") {
      diag = true;
      CHECK(trace.end() == poly("-3*y*x"));
    }
  }
  CHECK(na);
  CHECK(diag);
  CHECK(check::check_certificate(c.to_json(true)).ok);

  CHECK(verify_modN(3, 2).certified());
  IsomorphismCertificate c6 = verify_modN(2, 6);
  CHECK(c6.certified());
  CHECK_THROWS(verify_modN(2, 1));
}

TEST_CASE("jobs do not change the certificate") {
  CertOptions one, four;
  four.jobs = 4;
  IsomorphismCertificate a = certify_isomorphism(4, one), b = certify_isomorphism(4, four);
  a.seconds = b.seconds = 0;
  a.options.jobs = b.options.jobs = 1;
  CHECK(a.to_json(true) == b.to_json(true));
}
