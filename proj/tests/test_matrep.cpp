#include <doctest.h>

#include "matpres/matrep.hpp"

using namespace matpres;

namespace {

const CoeffRing kZ = CoeffRing::integers();

Matrix E(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(kZ, n, i, j); }

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("shift matrices") {
  Assignment a2 = shift_assignment(2);
  CHECK(a2.images[0] == E(2, 0, 1));
  CHECK(a2.images[1] == E(2, 1, 0));
  Assignment a3 = shift_assignment(3);
  CHECK(a3.images[0] == E(3, 0, 1) + E(3, 1, 2));
  CHECK(a3.images[1] == E(3, 1, 0) + E(3, 2, 1));
  Assignment a4 = shift_assignment(4);
  CHECK(eval_poly(poly("x^4"), a4).is_zero());
  CHECK(eval_poly(poly("y^4"), a4).is_zero());
  CHECK(swapped(a3).images[0] == a3.images[1]);
}

TEST_CASE("evaluation") {
  CHECK(eval_poly(poly("x*y + y*x"), shift_assignment(2)) == Matrix::identity(kZ, 2));
  for (int n = 2; n <= 5; ++n) {
    std::string m = std::to_string(n - 1);
    CHECK(eval_poly(poly("y^" + m + "*x^" + m), shift_assignment(n)) == E(n, n - 1, n - 1));
    CHECK(eval_poly(pow(poly("x"), n), shift_assignment(n)).is_zero());
  }
  CHECK(eval_poly(poly("3"), shift_assignment(2)) == Matrix::identity(kZ, 2).scaled(kZ.from_integer(3)));
}

TEST_CASE("relations at the shift matrices") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(check_relations(kassabov(n), shift_assignment(n)).all_zero());
    CHECK(check_relations(kassabov(n), swapped(shift_assignment(n))).all_zero());
  }
  Assignment xx = shift_assignment(3);
  xx.images[1] = xx.images[0];
  RelationCheck c = check_relations(kassabov(3), xx);
  CHECK_FALSE(c.all_zero());
  CHECK(c.relations[0].zero);
  CHECK_FALSE(c.relations[2].zero);
}

TEST_CASE("matrix json") {
  Matrix m = E(3, 0, 2).scaled(kZ.from_integer(-7)) + Matrix::identity(kZ, 3);
  CHECK(Matrix::from_json(m.to_json(), kZ) == m);
  CoeffRing zt = kZ.dual();
  Matrix d(zt, 2);
  d.set(1, 0, zt.make(2, -1));
  CHECK(Matrix::from_json(d.to_json(), zt) == d);
}

TEST_CASE("lattice") {
  IntegerLattice l(3);
  CHECK(l.insert(iv({2, 4, 6})));
  CHECK(l.insert(iv({0, 3, 3})));
  CHECK_FALSE(l.insert(iv({2, 7, 9})));
  CHECK(l.rank() == 2);
  CHECK(l.contains(iv({4, 5, 9})));
  CHECK_FALSE(l.contains(iv({1, 2, 3})));
  CHECK(l.basis() == std::vector<IntVector>{iv({2, 1, 3}), iv({0, 3, 3})});
  IntegerLattice t = l.tail(1);
  CHECK(t.rank() == 1);

  IntegerLattice tracked(2, true);
  tracked.insert(iv({3, 0}));
  tracked.insert(iv({0, 5}));
  tracked.insert(iv({6, 10}));
  auto c = tracked.express(iv({9, -5}));
  REQUIRE(c);
  BigInt a = 0, b = 0;
  for (const auto& [k, coeff] : *c) {
    if (k == 0) a += 3 * coeff;
    if (k == 1) b += 5 * coeff;
    if (k == 2) {
      a += 6 * coeff;
      b += 10 * coeff;
    }
  }
  CHECK(a == 9);
  CHECK(b == -5);
  CHECK(tracked.kernel().size() == 1);
  CHECK_FALSE(tracked.express(iv({1, 0})));
}

TEST_CASE("additive closure") {
  Assignment s = shift_assignment(2);
  Closure full = additive_closure(s.images, true);
  CHECK(full.lattice.rank() == 4);
  CHECK(full.lattice.basis() == std::vector<IntVector>{iv({1, 0, 0, 0}), iv({0, 1, 0, 0}), iv({0, 0, 1, 0}),
                                                       iv({0, 0, 0, 1})});
  CHECK(additive_closure({s.images[0]}, true).lattice.rank() == 2);
  CHECK(additive_closure({E(2, 0, 0)}, true).lattice.rank() == 2);
  for (int n = 2; n <= 5; ++n) CHECK(generation_check(shift_assignment(n).images, n));
  CHECK_FALSE(generation_check({E(2, 0, 0)}, 2));
  Matrix twice = s.images[0].scaled(kZ.from_integer(2));
  CHECK_FALSE(generation_check({twice, s.images[1]}, 2));
  CHECK(generation_check({twice, s.images[1]}, 2, 3));
}

TEST_CASE("dual number witness") {
  auto w = dual_number_witness(2);
  REQUIRE(w);
  CoeffRing zt = kZ.dual();
  Matrix x(zt, 2), y(zt, 2);
  x.set(0, 1, 1);
  x.set(1, 0, zt.make(0, 1));
  y.set(1, 0, 1);
  y.set(0, 1, zt.make(0, 1));
  CHECK(w->assignment.images[0] == x);
  CHECK(w->assignment.images[1] == y);
  Matrix tI = Matrix::identity(zt, 2).scaled(zt.make(0, 1));
  CHECK(x * x == tI);
  CHECK(y * y == tI);
  CHECK(x * y + y * x == Matrix::identity(zt, 2));
  CHECK(check_relations(two_relation_variant(2), w->assignment).all_zero());
  CHECK(w->x_power == tI);

  Assignment flat{{shift_assignment(2).images[0].embedded(zt), shift_assignment(2).images[1].embedded(zt)}};
  CHECK(check_relations(two_relation_variant(2), flat).all_zero());
  CHECK(eval_poly(poly("x^2"), flat).is_zero());

  for (int n = 3; n <= 4; ++n) {
    auto wn = dual_number_witness(n);
    if (wn) {
      CHECK(check_relations(two_relation_variant(n), wn->assignment).all_zero());
      CHECK_FALSE(eval_poly(pow(poly("x"), n), wn->assignment).is_zero());
    }
  }
}

TEST_CASE("cyclic assignment") {
  for (int p : {2, 3, 5}) {
    Assignment a = cyclic_assignment(p);
    CHECK(check_relations(guralnick(p), a).all_zero());
    CHECK(generation_check(a.images, p, p));
  }
  CoeffRing f2 = CoeffRing::prime_field(2);
  Assignment a = cyclic_assignment(2);
  CHECK(a.images[0] == Matrix::unit(f2, 2, 1, 1));
  CHECK(a.images[1] == Matrix::unit(f2, 2, 0, 1) + Matrix::unit(f2, 2, 1, 0));
  CHECK(additive_closure(a.images, true, 2).lattice.rank() == 4);
}
