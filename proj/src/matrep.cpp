#include "matpres/matrep.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

std::string Assignment::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  auto d = static_cast<unsigned>(images.size());
  for (unsigned g = 0; g < d; ++g) {
    out[generator_name({g}, d)] = nlohmann::ordered_json::parse(images[g].to_json());
  }
  return out.dump();
}

Assignment shift_assignment(int n) {
  if (n < 2) throw std::invalid_argument("shift assignment needs n >= 2");
  const CoeffRing z = CoeffRing::integers();
  auto un = static_cast<std::size_t>(n);
  Matrix x(z, un), y(z, un);
  for (std::size_t i = 0; i + 1 < un; ++i) {
    x.set(i, i + 1, 1);
    y.set(i + 1, i, 1);
  }
  return {{x, y}};
}

Assignment swapped(const Assignment& a) {
  if (a.images.size() != 2) throw std::invalid_argument("swap needs a two-generator assignment");
  return {{a.images[1], a.images[0]}};
}

Matrix eval_poly(const FreePoly& p, const Assignment& a) {
  if (a.images.size() < p.alphabet()) throw std::invalid_argument("assignment does not cover the alphabet");
  const CoeffRing& target = a.ring();
  std::size_t n = a.dim();
  for (const auto& m : a.images) {
    if (m.dim() != n || !(m.ring() == target)) throw RingMismatch("assignment images disagree on dimension or ring");
  }
  // Words are evaluated run by run with cached powers.
  std::map<std::pair<unsigned, std::size_t>, Matrix> powers;
  auto power = [&](unsigned g, std::size_t e) -> const Matrix& {
    auto it = powers.find({g, e});
    if (it != powers.end()) return it->second;
    Matrix m = a.images[g];
    for (std::size_t k = 1; k < e; ++k) m = m * a.images[g];
    return powers.emplace(std::make_pair(g, e), std::move(m)).first->second;
  };
  Matrix sum(target, n);
  for (const auto& [w, c] : p.terms()) {
    Matrix prod = Matrix::identity(target, n);
    for (std::size_t k = 0; k < w.size();) {
      std::size_t e = 1;
      while (k + e < w.size() && w[k + e] == w[k]) ++e;
      prod = prod * power(w[k].index, e);
      k += e;
    }
    sum += prod.scaled(target.embed(c, p.ring()));
  }
  return sum;
}

bool RelationCheck::all_zero() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationResidual& r) { return r.zero; });
}

RelationCheck check_relations(const Presentation& pr, const Assignment& a) {
  if (a.images.size() != pr.alphabet) throw std::invalid_argument("assignment and presentation alphabets differ");
  RelationCheck out;
  for (std::size_t i = 0; i < pr.relations.size(); ++i) {
    Matrix m = eval_poly(pr.relations[i], a);
    bool zero = m.is_zero();
    out.relations.push_back({i, zero, std::move(m)});
  }
  return out;
}

namespace {

Matrix from_vector(const IntVector& v, std::size_t n) {
  Matrix m(CoeffRing::integers(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Scalar{v[i * n + j], 0});
  return m;
}

IntVector reduced(IntVector v, const BigInt& modulus) {
  if (modulus > 0) {
    for (auto& e : v) mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
  }
  return v;
}

}  // namespace

Closure additive_closure(const std::vector<Matrix>& mats, bool include_unit, const BigInt& modulus) {
  if (mats.empty() && !include_unit) throw std::invalid_argument("closure of the empty set");
  std::size_t n = mats.empty() ? 0 : mats.front().dim();
  std::vector<Matrix> gens;
  for (const auto& m : mats) {
    if (m.dim() != n) throw std::invalid_argument("closure inputs differ in dimension");
    // Residues mod N are lifted to their representatives in [0, N).
    bool lifts = m.ring().is_integers() || (!m.ring().is_dual() && modulus > 0 && m.ring().modulus() == modulus);
    if (!lifts) throw RingMismatch("closure inputs must be integer matrices or residues mod the closure modulus");
    Matrix z(CoeffRing::integers(), n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) z.set(i, j, Scalar{m.at(i, j).value, 0});
    gens.push_back(std::move(z));
  }
  Closure out{IntegerLattice(n * n), 0};
  if (modulus > 0) {
    for (std::size_t k = 0; k < n * n; ++k) {
      IntVector e(n * n);
      e[k] = modulus;
      out.lattice.insert(std::move(e));
    }
  }
  std::vector<IntVector> frontier;
  auto add = [&](IntVector v, std::vector<IntVector>& into) {
    v = reduced(std::move(v), modulus);
    if (out.lattice.insert(v)) into.push_back(std::move(v));
  };
  for (const auto& g : gens) add(g.flatten(), frontier);
  if (include_unit) add(Matrix::identity(CoeffRing::integers(), n).flatten(), frontier);
  while (!frontier.empty()) {
    ++out.rounds;
    std::vector<IntVector> next;
    for (const auto& v : frontier) {
      Matrix m = from_vector(v, n);
      for (const auto& g : gens) {
        add((m * g).flatten(), next);
        add((g * m).flatten(), next);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool generation_check(const std::vector<Matrix>& mats, std::size_t n, const BigInt& modulus) {
  if (n == 0) return false;
  for (const auto& m : mats) {
    if (m.dim() != n) return false;
  }
  Closure c = additive_closure(mats, true, modulus);
  if (c.lattice.rank() != n * n) return false;
  for (const auto& row : c.lattice.basis()) {
    if (std::count_if(row.begin(), row.end(), [](const BigInt& e) { return e != 0; }) != 1) return false;
    if (std::find(row.begin(), row.end(), BigInt(1)) == row.end()) return false;
  }
  return true;
}

namespace {

// t-parts of (x^n - y^n, xy + y^(n-1) x^(n-1) - 1) at x -> X + tA, y -> Y + tB.
IntVector variant_defect(const Presentation& pr, const Matrix& x, const Matrix& y) {
  Assignment a{{x, y}};
  IntVector out;
  for (const auto& rel : pr.relations) {
    Matrix m = eval_poly(rel, a);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) out.push_back(m.at(i, j).tpart);
  }
  return out;
}

Matrix lift(const Matrix& base, const IntVector& z, std::size_t offset) {
  const CoeffRing d = CoeffRing::integers().dual();
  std::size_t n = base.dim();
  Matrix m(d, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, d.make(base.at(i, j).value, z[offset + i * n + j]));
  return m;
}

}  // namespace

std::optional<DualWitness> dual_number_witness(int n) {
  Presentation pr = two_relation_variant(n);
  Assignment shift = shift_assignment(n);
  auto un = static_cast<std::size_t>(n);
  std::size_t unknowns = 2 * un * un;
  const Matrix& X = shift.images[0];
  const Matrix& Y = shift.images[1];

  // The defect is linear in z (the constant part vanishes), so its values on
  // unit vectors determine it; the kernel lattice is tracked by the HNF.
  IntegerLattice lat(2 * un * un, true);
  for (std::size_t k = 0; k < unknowns; ++k) {
    IntVector z(unknowns);
    z[k] = 1;
    lat.insert(variant_defect(pr, lift(X, z, 0), lift(Y, z, un * un)));
  }

  struct Candidate {
    IntVector z;
    std::size_t support;
    BigInt weight;
  };
  std::vector<Candidate> found;
  for (const auto& rel : lat.kernel()) {
    IntVector z(unknowns);
    for (const auto& [k, c] : rel) z[k] = c;
    Matrix xn = eval_poly(FreePoly::monomial(pr.ring, 2, Word::power({0}, un)),
                          Assignment{{lift(X, z, 0), lift(Y, z, un * un)}});
    if (xn.is_zero()) continue;
    BigInt weight = 0;
    for (const auto& e : z) weight += abs(e);
    found.push_back({std::move(z), rel.size(), weight});
  }
  if (found.empty()) return std::nullopt;
  auto best = std::min_element(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.support != b.support) return a.support < b.support;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.z > b.z;
  });
  DualWitness w;
  w.assignment = Assignment{{lift(X, best->z, 0), lift(Y, best->z, un * un)}};
  const CoeffRing& z = CoeffRing::integers();
  w.x_power = eval_poly(FreePoly::monomial(z, 2, Word::power({0}, un)), w.assignment);
  w.y_power = eval_poly(FreePoly::monomial(z, 2, Word::power({1}, un)), w.assignment);
  w.kernel_rank = lat.kernel().size();
  return w;
}

Assignment cyclic_assignment(const BigInt& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("cyclic assignment needs p prime, got " + p.get_str());
  if (!p.fits_uint_p() || p > 1000) throw std::invalid_argument("cyclic assignment: p too large");
  const CoeffRing f = CoeffRing::prime_field(p);
  std::size_t k = p.get_ui();
  Matrix x(f, k), y(f, k);
  for (std::size_t i = 0; i < k; ++i) {
    x.set(i, i, f.from_integer(BigInt(static_cast<unsigned long>(i))));
    y.set((i + 1) % k, i, f.one());
  }
  return {{x, y}};
}

}  // namespace matpres
