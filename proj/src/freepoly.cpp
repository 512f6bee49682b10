#include "matpres/freepoly.hpp"

#include <cctype>
#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

FreePoly::FreePoly(CoeffRing ring, unsigned alphabet) : ring_(std::move(ring)), alphabet_(alphabet) {
  if (alphabet == 0 || alphabet > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [1, " + std::to_string(kMaxAlphabet) + "]");
  }
}

FreePoly FreePoly::constant(const CoeffRing& ring, unsigned alphabet, const Scalar& c) {
  return monomial(ring, alphabet, Word{}, c);
}

FreePoly FreePoly::monomial(const CoeffRing& ring, unsigned alphabet, const Word& w) {
  return monomial(ring, alphabet, w, ring.one());
}

FreePoly FreePoly::monomial(const CoeffRing& ring, unsigned alphabet, const Word& w, const Scalar& c) {
  FreePoly p(ring, alphabet);
  p.accumulate(w, c);
  return p;
}

Scalar FreePoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? ring_.zero() : it->second;
}

void FreePoly::accumulate(const Word& w, const Scalar& c) {
  if (ring_.is_zero(c)) return;
  if (w.alphabet_needed() > alphabet_) {
    throw std::invalid_argument("word uses a generator outside the alphabet of size " + std::to_string(alphabet_));
  }
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second = ring_.add(it->second, c);
  if (ring_.is_zero(it->second)) terms_.erase(it);
}

void FreePoly::check_compatible(const FreePoly& q) const {
  if (!(ring_ == q.ring_)) throw RingMismatch("coefficient rings differ: " + ring_.name() + " vs " + q.ring_.name());
  if (alphabet_ != q.alphabet_) throw RingMismatch("alphabet sizes differ");
}

FreePoly& FreePoly::operator+=(const FreePoly& q) {
  check_compatible(q);
  for (const auto& [w, c] : q.terms_) accumulate(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& q) {
  check_compatible(q);
  for (const auto& [w, c] : q.terms_) accumulate(w, ring_.neg(c));
  return *this;
}

FreePoly FreePoly::operator-() const {
  FreePoly r(ring_, alphabet_);
  for (const auto& [w, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, ring_.neg(c));
  return r;
}

FreePoly operator*(const FreePoly& p, const FreePoly& q) {
  p.check_compatible(q);
  FreePoly r(p.ring_, p.alphabet_);
  for (const auto& [u, a] : p.terms_) {
    for (const auto& [v, b] : q.terms_) r.accumulate(u * v, p.ring_.mul(a, b));
  }
  return r;
}

FreePoly FreePoly::multiplied(const Word& left, const Word& right) const {
  FreePoly r(ring_, alphabet_);
  for (const auto& [w, c] : terms_) r.accumulate(left * w * right, c);
  return r;
}

FreePoly scale(const Scalar& c, const FreePoly& p) {
  FreePoly r(p.ring(), p.alphabet());
  for (const auto& [w, a] : p.terms()) r.accumulate(w, p.ring().mul(c, a));
  return r;
}

FreePoly pow(const FreePoly& p, unsigned k) {
  FreePoly r = FreePoly::constant(p.ring(), p.alphabet(), p.ring().one());
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

FreePoly sigma(const FreePoly& p) {
  if (p.alphabet() != 2) throw std::invalid_argument("sigma is only defined on the alphabet {x, y}");
  static constexpr unsigned swap[2] = {1, 0};
  FreePoly r(p.ring(), 2);
  for (const auto& [w, c] : p.terms()) r.accumulate(w.reversed().relabeled(swap), c);
  return r;
}

std::string FreePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    bool negative = !ring_.is_dual() && c.value < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string coeff;
    if (ring_.is_dual()) {
      coeff = ring_.format(c);
    } else {
      coeff = BigInt(abs(c.value)).get_str();
    }
    if (w.empty()) {
      out += coeff;
    } else {
      if (coeff != "1") out += coeff + "*";
      out += format_word(w, alphabet_);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const CoeffRing& ring, unsigned alphabet, const std::vector<std::string>& names)
      : text_(text), ring_(ring), alphabet_(alphabet), names_(names) {
    if (names_.empty()) {
      for (unsigned g = 0; g < alphabet; ++g) names_.push_back(generator_name({g}, alphabet));
    }
    if (names_.size() != alphabet) throw std::invalid_argument("generator name count does not match alphabet");
  }

  FreePoly parse() {
    FreePoly result(ring_, alphabet_);
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    for (;;) {
      auto [w, c] = term();
      result.accumulate(w, negative ? ring_.neg(c) : c);
      skip_space();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      get();
      negative = op == '-';
    }
    return result;
  }

 private:
  std::pair<Word, Scalar> term() {
    Word w;
    Scalar c = ring_.one();
    for (;;) {
      skip_space();
      if (at_end()) fail("expected a factor");
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c = ring_.mul(c, ring_.from_integer(integer()));
      } else if (ch == '(') {
        c = ring_.mul(c, dual_coefficient());
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        Generator g = generator();
        std::size_t k = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
          get();
          skip_space();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
          BigInt e = integer();
          if (e > 100000) fail("exponent too large");
          k = e.get_ui();
        }
        w *= Word::power(g, k);
      } else {
        fail(std::string("unexpected '") + ch + "'");
      }
      skip_space();
      if (at_end() || peek() != '*') break;
      get();
    }
    return {w, c};
  }

  Scalar dual_coefficient() {
    get();  // '('
    if (!ring_.is_dual()) fail("parenthesised coefficients are only allowed over dual rings");
    skip_space();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = get() == '-';
    skip_space();
    BigInt a = integer();
    if (neg) a = -a;
    skip_space();
    if (at_end() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' in dual coefficient");
    bool tneg = get() == '-';
    skip_space();
    BigInt b = integer();
    if (tneg) b = -b;
    skip_space();
    if (!at_end() && peek() == '*') get();
    skip_space();
    if (at_end() || get() != 't') fail("expected 't'");
    skip_space();
    if (at_end() || get() != ')') fail("expected ')'");
    return ring_.make(a, b);
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return parse_bigint(text_.substr(start, pos_ - start));
  }

  Generator generator() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    for (unsigned g = 0; g < names_.size(); ++g) {
      if (names_[g] == name) return {g};
    }
    pos_ = start;
    fail("unknown generator '" + std::string(name) + "'");
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  std::string_view text_;
  const CoeffRing& ring_;
  unsigned alphabet_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

FreePoly parse_poly(std::string_view text, const CoeffRing& ring, unsigned alphabet,
                    const std::vector<std::string>& names) {
  return PolyParser(text, ring, alphabet, names).parse();
}

FreePoly poly(std::string_view text) { return parse_poly(text, CoeffRing::integers(), 2); }

}  // namespace matpres
