#include "matpres/lattice.hpp"

#include <stdexcept>

namespace matpres {

namespace {

void axpy(IntVector& y, const BigInt& a, const IntVector& x, std::size_t from) {
  for (std::size_t k = from; k < y.size(); ++k) {
    if (x[k] != 0) y[k] += a * x[k];
  }
}

void axpy(Combination& y, const BigInt& a, const Combination& x) {
  for (const auto& [k, c] : x) {
    BigInt& slot = y[k];
    slot += a * c;
    if (slot == 0) y.erase(k);
  }
}

Combination combine(const BigInt& s, const Combination& a, const BigInt& t, const Combination& b) {
  Combination out;
  axpy(out, s, a);
  axpy(out, t, b);
  return out;
}

std::size_t leading(const IntVector& v, std::size_t from) {
  while (from < v.size() && v[from] == 0) ++from;
  return from;
}

}  // namespace

void IntegerLattice::reduce_right(Row& row, std::size_t pivot) const {
  for (auto it = rows_.upper_bound(pivot); it != rows_.end(); ++it) {
    const BigInt& e = row.v[it->first];
    if (e == 0) continue;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), e.get_mpz_t(), it->second.v[it->first].get_mpz_t());
    if (q == 0) continue;
    BigInt mq = -q;
    axpy(row.v, mq, it->second.v, it->first);
    if (track_) axpy(row.combo, mq, it->second.combo);
  }
}

bool IntegerLattice::insert(IntVector v) {
  if (v.size() != ambient_) throw std::invalid_argument("lattice vector has the wrong length");
  Row cur{std::move(v), {}};
  if (track_) cur.combo[inserted_] = 1;
  ++inserted_;
  bool grew = false;
  for (std::size_t c = leading(cur.v, 0); c < ambient_; c = leading(cur.v, c + 1)) {
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      if (cur.v[c] < 0) {
        for (auto& e : cur.v) e = -e;
        for (auto& [k, e] : cur.combo) e = -e;
      }
      reduce_right(cur, c);
      rows_.emplace(c, std::move(cur));
      return true;
    }
    Row& row = it->second;
    const BigInt a = row.v[c];
    const BigInt b = cur.v[c];
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      BigInt q = -(b / a);
      axpy(cur.v, q, row.v, c);
      if (track_) axpy(cur.combo, q, row.combo);
      continue;
    }
    // Unimodular 2x2 step: new row = s*row + t*cur has pivot gcd(a, b).
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    BigInt ag = a / g, bg = -(b / g);
    Row next{IntVector(ambient_), {}};
    for (std::size_t k = c; k < ambient_; ++k) {
      next.v[k] = s * row.v[k] + t * cur.v[k];
      cur.v[k] = ag * cur.v[k] + bg * row.v[k];
    }
    if (track_) {
      next.combo = combine(s, row.combo, t, cur.combo);
      cur.combo = combine(ag, cur.combo, bg, row.combo);
    }
    if (next.v[c] < 0) {
      for (auto& e : next.v) e = -e;
      for (auto& [k, e] : next.combo) e = -e;
    }
    reduce_right(next, c);
    row = std::move(next);
    grew = true;
  }
  if (track_ && !cur.combo.empty()) kernel_.push_back(std::move(cur.combo));
  return grew;
}

bool IntegerLattice::contains(const IntVector& v) const {
  if (v.size() != ambient_) return false;
  IntVector cur = v;
  for (std::size_t c = leading(cur, 0); c < ambient_; c = leading(cur, c + 1)) {
    auto it = rows_.find(c);
    if (it == rows_.end()) return false;
    const BigInt& a = it->second.v[c];
    if (!mpz_divisible_p(cur[c].get_mpz_t(), a.get_mpz_t())) return false;
    BigInt q = -(cur[c] / a);
    axpy(cur, q, it->second.v, c);
  }
  return true;
}

std::optional<Combination> IntegerLattice::express(const IntVector& v) const {
  if (!track_) throw std::logic_error("express() needs a tracking lattice");
  if (v.size() != ambient_) return std::nullopt;
  IntVector cur = v;
  Combination out;
  for (std::size_t c = leading(cur, 0); c < ambient_; c = leading(cur, c + 1)) {
    auto it = rows_.find(c);
    if (it == rows_.end()) return std::nullopt;
    const BigInt& a = it->second.v[c];
    if (!mpz_divisible_p(cur[c].get_mpz_t(), a.get_mpz_t())) return std::nullopt;
    BigInt q = cur[c] / a;
    axpy(cur, -q, it->second.v, c);
    axpy(out, q, it->second.combo);
  }
  return out;
}

std::vector<IntVector> IntegerLattice::basis() const {
  std::vector<std::size_t> pivots;
  std::vector<IntVector> rows;
  for (const auto& [c, row] : rows_) {
    pivots.push_back(c);
    rows.push_back(row.v);
  }
  // Row i is zero left of its pivot, so clearing column pivots[i] never
  // disturbs the columns of earlier pivots.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = pivots[i];
    for (std::size_t r = 0; r < i; ++r) {
      if (rows[r][c] == 0) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[i][c].get_mpz_t());
      if (q != 0) axpy(rows[r], -q, rows[i], c);
    }
  }
  return rows;
}

IntegerLattice IntegerLattice::tail(std::size_t column) const {
  IntegerLattice out(ambient_);
  for (auto it = rows_.lower_bound(column); it != rows_.end(); ++it) out.insert(it->second.v);
  return out;
}

}  // namespace matpres
