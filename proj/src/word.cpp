#include "matpres/word.hpp"

#include <algorithm>
#include <stdexcept>

#include "matpres/errors.hpp"
#include "matpres/freepoly.hpp"

namespace matpres {

std::string generator_name(Generator g, unsigned alphabet) {
  if (alphabet == 2) return g.index == 0 ? "x" : "y";
  return "g" + std::to_string(g.index);
}

Word::Word(std::initializer_list<unsigned> letters) {
  letters_.reserve(letters.size());
  for (unsigned l : letters) {
    if (l >= kMaxAlphabet) throw std::invalid_argument("generator index out of range");
    letters_.push_back(static_cast<char>(l));
  }
}

Word Word::power(Generator g, std::size_t k) {
  if (g.index >= kMaxAlphabet) throw std::invalid_argument("generator index out of range");
  Word w;
  w.letters_.assign(k, static_cast<char>(g.index));
  return w;
}

unsigned Word::alphabet_needed() const noexcept {
  unsigned m = 0;
  for (char c : letters_) m = std::max(m, static_cast<unsigned>(c) + 1);
  return m;
}

Word Word::operator*(const Word& other) const {
  Word w;
  w.letters_.reserve(letters_.size() + other.letters_.size());
  w.letters_ = letters_;
  w.letters_ += other.letters_;
  return w;
}

Word& Word::operator*=(const Word& other) {
  letters_ += other.letters_;
  return *this;
}

Word Word::sub(std::size_t pos, std::size_t len) const {
  Word w;
  w.letters_ = letters_.substr(pos, len);
  return w;
}

Word Word::reversed() const {
  Word w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  return w;
}

Word Word::relabeled(const unsigned* image) const {
  Word w = *this;
  for (char& c : w.letters_) c = static_cast<char>(image[static_cast<unsigned char>(c)]);
  return w;
}

std::strong_ordering deglex_compare(const Word& u, const Word& v) noexcept {
  if (u.size() != v.size()) return u.size() <=> v.size();
  int c = u.raw().compare(v.raw());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

LetterOrder LetterOrder::identity(unsigned alphabet) {
  LetterOrder o;
  for (unsigned i = 0; i < alphabet; ++i) o.rank.push_back(static_cast<char>(i));
  return o;
}

LetterOrder LetterOrder::reversed(unsigned alphabet) {
  LetterOrder o;
  for (unsigned i = 0; i < alphabet; ++i) o.rank.push_back(static_cast<char>(alphabet - 1 - i));
  return o;
}

std::strong_ordering LetterOrder::compare(const Word& u, const Word& v) const noexcept {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto a = rank[u[i].index];
    auto b = rank[v[i].index];
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

std::string format_word(const Word& w, unsigned alphabet) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += generator_name(w[i], alphabet);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Word parse_word(std::string_view text, unsigned alphabet) {
  auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  FreePoly p = parse_poly(text, CoeffRing::integers(), alphabet);
  if (p.terms().size() != 1 || p.terms().begin()->second.value != 1) {
    throw ParseError("expected a single monomial '" + std::string(text) + "'", 1, 1);
  }
  return p.terms().begin()->first;
}

}  // namespace matpres
