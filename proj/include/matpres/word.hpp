#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace matpres {

/// A free generator. Index 0 prints as "x", 1 as "y" in two-letter alphabets
/// and as "g<k>" otherwise.
struct Generator {
  unsigned index = 0;
  friend constexpr auto operator<=>(const Generator&, const Generator&) = default;
};

inline constexpr unsigned kMaxAlphabet = 64;

std::string generator_name(Generator g, unsigned alphabet);

/// Monomial of the free monoid: a plain sequence of generators. The empty
/// word is the unit monomial.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<unsigned> letters);

  static Word power(Generator g, std::size_t k);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Generator operator[](std::size_t i) const { return {static_cast<unsigned char>(letters_[i])}; }
  /// One past the largest generator index used; 0 for the empty word.
  unsigned alphabet_needed() const noexcept;

  Word operator*(const Word& other) const;
  Word& operator*=(const Word& other);

  Word sub(std::size_t pos, std::size_t len = std::string::npos) const;
  std::size_t find(const Word& pattern, std::size_t from = 0) const noexcept {
    return letters_.find(pattern.letters_, from);
  }
  std::size_t rfind(const Word& pattern) const noexcept { return letters_.rfind(pattern.letters_); }
  bool contains(const Word& pattern) const noexcept { return find(pattern) != std::string::npos; }

  Word reversed() const;
  /// Letter-wise image under an index map, e.g. x <-> y.
  Word relabeled(const unsigned* image) const;

  std::string_view raw() const noexcept { return letters_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

/// Degree-lexicographic order: shorter words first, equal lengths compared
/// letter by letter on generator index (x < y).
std::strong_ordering deglex_compare(const Word& u, const Word& v) noexcept;

struct DeglexLess {
  bool operator()(const Word& u, const Word& v) const noexcept { return deglex_compare(u, v) < 0; }
};

/// Deglex with a custom letter precedence; `rank[g]` is the position of
/// generator g. Used when a system is oriented against the default letter order.
struct LetterOrder {
  std::string rank;  // rank[g] = precedence of generator g
  static LetterOrder identity(unsigned alphabet);
  static LetterOrder reversed(unsigned alphabet);
  std::strong_ordering compare(const Word& u, const Word& v) const noexcept;
};

/// "x^2*y*x"; the empty word prints as "1".
std::string format_word(const Word& w, unsigned alphabet);
/// Inverse of format_word; also accepts "" for the empty word.
Word parse_word(std::string_view text, unsigned alphabet);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return std::hash<std::string_view>{}(w.raw()); }
};

}  // namespace matpres
