#include "matpres/matrix.hpp"

#include <json.hpp>
#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

Matrix::Matrix(CoeffRing ring, std::size_t n) : ring_(std::move(ring)), n_(n), entries_(n * n) {}

Matrix Matrix::identity(const CoeffRing& ring, std::size_t n) {
  Matrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring.one());
  return m;
}

Matrix Matrix::unit(const CoeffRing& ring, std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::out_of_range("matrix unit index out of range");
  Matrix m(ring, n);
  m.set(i, j, ring.one());
  return m;
}

void Matrix::check_compatible(const Matrix& b) const {
  if (!(ring_ == b.ring_)) throw RingMismatch("matrices over different rings: " + ring_.name() + ", " + b.ring_.name());
  if (n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
}

Matrix& Matrix::operator+=(const Matrix& b) {
  check_compatible(b);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] = ring_.add(entries_[k], b.entries_[k]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  check_compatible(b);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] = ring_.sub(entries_[k], b.entries_[k]);
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  a.check_compatible(b);
  const CoeffRing& r = a.ring_;
  std::size_t n = a.n_;
  Matrix c(r, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar& aik = a.at(i, k);
      if (r.is_zero(aik)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (r.is_zero(bkj)) continue;
        c.entries_[i * n + j] = r.add(c.entries_[i * n + j], r.mul(aik, bkj));
      }
    }
  }
  return c;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m(ring_, n_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = ring_.mul(c, entries_[k]);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix m(ring_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m.set(j, i, at(i, j));
  return m;
}

Matrix Matrix::embedded(const CoeffRing& target) const {
  Matrix m(target, n_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = target.embed(entries_[k], ring_);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!ring_.is_zero(e)) return false;
  return true;
}

std::vector<BigInt> Matrix::flatten() const {
  std::vector<BigInt> out;
  out.reserve(entries_.size() * (ring_.is_dual() ? 2 : 1));
  for (const auto& e : entries_) out.push_back(e.value);
  if (ring_.is_dual())
    for (const auto& e : entries_) out.push_back(e.tpart);
  return out;
}

std::string Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < n_; ++j) {
      const Scalar& e = at(i, j);
      if (ring_.is_dual()) {
        row.push_back({e.value.get_str(), e.tpart.get_str()});
      } else {
        row.push_back(e.value.get_str());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

Matrix Matrix::from_json(const std::string& text, const CoeffRing& ring) {
  auto rows = nlohmann::json::parse(text);
  if (!rows.is_array()) throw std::invalid_argument("matrix JSON must be an array of rows");
  std::size_t n = rows.size();
  Matrix m(ring, n);
  auto integer = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
    throw std::invalid_argument("matrix entry must be an integer or integer string");
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw std::invalid_argument("matrix JSON is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = rows[i][j];
      if (v.is_array()) {
        if (v.size() != 2 || !ring.is_dual()) throw std::invalid_argument("pair entries need a dual ring");
        m.set(i, j, ring.make(integer(v[0]), integer(v[1])));
      } else {
        m.set(i, j, ring.from_integer(integer(v)));
      }
    }
  }
  return m;
}

}  // namespace matpres
