#include "matpres/presentation.hpp"

#include <cctype>
#include <stdexcept>

#include "matpres/errors.hpp"

namespace matpres {

namespace {

Word xs(int k) { return Word::power({0}, static_cast<std::size_t>(k)); }
Word ys(int k) { return Word::power({1}, static_cast<std::size_t>(k)); }

FreePoly mono(const CoeffRing& ring, const Word& w, const BigInt& c = 1) {
  return FreePoly::monomial(ring, 2, w, ring.from_integer(c));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

Presentation kassabov_family(int n, const BigInt& factor, std::string name) {
  const CoeffRing z = CoeffRing::integers();
  Presentation p{std::move(name), z, 2, {}, {}};
  p.relations.push_back(mono(z, xs(n)));
  p.relations.push_back(mono(z, ys(n)));
  p.relations.push_back(mono(z, Word{0, 1}) + mono(z, ys(n - 1) * xs(n - 1), factor) - mono(z, {}));
  p.orientation = {xs(n), ys(n), Word{0, 1}};
  return p;
}

}  // namespace

Presentation kassabov(int n) {
  require(n >= 2, "kassabov presentation needs n >= 2");
  return kassabov_family(n, 1, "kassabov(" + std::to_string(n) + ")");
}

Presentation kassabov_mod(int n, const BigInt& modulus) {
  require(n >= 2, "kassabov-mod presentation needs n >= 2");
  require(modulus >= 2, "kassabov-mod presentation needs N >= 2");
  return kassabov_family(n, modulus + 1, "kassabov-mod(" + std::to_string(n) + "," + modulus.get_str() + ")");
}

Presentation guralnick(const BigInt& p) {
  require(is_probable_prime(p), "guralnick presentation needs p prime, got " + p.get_str());
  require(p.fits_uint_p() && p < 1000, "guralnick presentation: p too large");
  const CoeffRing f = CoeffRing::prime_field(p);
  int k = static_cast<int>(p.get_ui());
  Presentation pr{"guralnick(" + p.get_str() + ")", f, 2, {}, {}};
  pr.relations.push_back(mono(f, ys(k)) - mono(f, {}));
  pr.relations.push_back(mono(f, xs(k)) - mono(f, xs(1)));
  pr.relations.push_back(mono(f, Word{0, 1}) - mono(f, Word{1, 0}) - mono(f, ys(1)));
  pr.orientation = {ys(k), xs(k), Word{0, 1}};
  return pr;
}

Presentation two_relation_variant(int n) {
  require(n >= 2, "two-relation variant needs n >= 2");
  const CoeffRing z = CoeffRing::integers();
  Presentation p{"variant2(" + std::to_string(n) + ")", z, 2, {}, {}};
  p.relations.push_back(mono(z, xs(n)) - mono(z, ys(n)));
  p.relations.push_back(mono(z, Word{0, 1}) + mono(z, ys(n - 1) * xs(n - 1)) - mono(z, {}));
  p.orientation = {xs(n), Word{0, 1}};
  return p;
}

Presentation preset(std::string_view spec) {
  auto colon = spec.find(':');
  require(colon != std::string_view::npos, "preset must look like name:params");
  std::string_view name = spec.substr(0, colon);
  std::string_view args = spec.substr(colon + 1);
  std::vector<BigInt> params;
  while (!args.empty()) {
    auto comma = args.find(',');
    params.push_back(parse_bigint(args.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  auto small = [](const BigInt& v) {
    require(v.fits_sint_p() && v < 10000 && v > -10000, "preset parameter out of range");
    return static_cast<int>(v.get_si());
  };
  if (name == "kassabov" && params.size() == 1) return kassabov(small(params[0]));
  if (name == "kassabov-mod" && params.size() == 2) return kassabov_mod(small(params[0]), params[1]);
  if (name == "guralnick" && params.size() == 1) return guralnick(params[0]);
  if (name == "variant2" && params.size() == 1) return two_relation_variant(small(params[0]));
  throw std::invalid_argument("unknown preset '" + std::string(spec) + "'");
}

namespace {

struct Statement {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead != nullptr) *lead = a;
  return s.substr(a, b - a);
}

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::size_t line = 1, col = 1, start = 0, start_line = 1, start_col = 1;
  bool comment = false;
  auto flush = [&](std::size_t end) {
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    std::string_view s = trim(raw, &lead);
    if (!s.empty()) out.push_back({s, start_line, start_col + lead});
  };
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : '\n';
    if (c == '#') comment = true;
    if (c == ';' || c == '\n') {
      if (!(comment && c == ';')) {
        flush(i);
        start = i + 1;
        start_line = c == '\n' ? line + 1 : line;
        start_col = c == '\n' ? 1 : col + 1;
        if (c == '\n') comment = false;
      }
    }
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return out;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p{"", CoeffRing::integers(), 0, {}, {}};
  std::vector<std::string> names;
  bool have_ring = false;
  for (const Statement& st : split_statements(text)) {
    auto space = st.text.find_first_of(" \t");
    std::string_view keyword = st.text.substr(0, space);
    std::size_t lead = 0;
    std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(st.text.substr(space), &lead);
    std::size_t rest_col = st.column + (space == std::string_view::npos ? st.text.size() : space + lead);
    auto fail = [&](const std::string& what, std::size_t col) -> void { throw ParseError(what, st.line, col); };
    try {
      if (keyword == "name") {
        p.name = std::string(rest);
      } else if (keyword == "ring") {
        p.ring = parse_ring(rest);
        have_ring = true;
      } else if (keyword == "gens") {
        names.clear();
        std::size_t i = 0;
        while (i < rest.size()) {
          while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
          std::size_t j = i;
          while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
          if (j > i) names.emplace_back(rest.substr(i, j - i));
          i = j;
        }
        if (names.empty() || names.size() > kMaxAlphabet) fail("bad generator list", rest_col);
        p.alphabet = static_cast<unsigned>(names.size());
      } else if (keyword == "rel") {
        if (!have_ring || names.empty()) fail("'rel' before 'ring' and 'gens'", st.column);
        if (rest.empty()) fail("empty relation", rest_col);
        auto parse_at = [&](std::string_view body, std::size_t col) {
          try {
            return parse_poly(body, p.ring, p.alphabet, names);
          } catch (const ParseError& e) {
            std::string msg = e.what();
            throw ParseError(msg.substr(0, msg.rfind(" at line")), st.line, col + e.column() - 1);
          }
        };
        auto eq = rest.find('=');
        std::optional<Word> hint;
        FreePoly rel(p.ring, p.alphabet);
        if (eq == std::string_view::npos) {
          rel = parse_at(rest, rest_col);
        } else {
          FreePoly lhs = parse_at(rest.substr(0, eq), rest_col);
          FreePoly rhs = parse_at(rest.substr(eq + 1), rest_col + eq + 1);
          rel = lhs - rhs;
          if (lhs.size() == 1 && p.ring.is_one(lhs.terms().begin()->second)) hint = lhs.terms().begin()->first;
        }
        if (rel.is_zero()) fail("relation is zero", rest_col);
        p.relations.push_back(std::move(rel));
        p.orientation.push_back(hint);
      } else {
        fail("unknown statement '" + std::string(keyword) + "'", st.column);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), st.line, rest_col);
    }
  }
  if (p.alphabet == 0) throw ParseError("missing 'gens' statement", 1, 1);
  return p;
}

std::string format_presentation(const Presentation& p) {
  std::string out;
  if (!p.name.empty()) out += "name " + p.name + "; ";
  out += "ring " + p.ring.name() + "; gens";
  for (unsigned g = 0; g < p.alphabet; ++g) out += " " + generator_name({g}, p.alphabet);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const FreePoly& rel = p.relations[i];
    const auto& hint = i < p.orientation.size() ? p.orientation[i] : std::nullopt;
    if (hint && p.ring.is_one(rel.coefficient(*hint))) {
      FreePoly rhs = FreePoly::monomial(p.ring, p.alphabet, *hint) - rel;
      out += "; rel " + format_word(*hint, p.alphabet) + " = " + rhs.to_string();
    } else {
      out += "; rel " + rel.to_string();
    }
  }
  return out;
}

RewriteSystem rewrite_system(const Presentation& p) {
  RewriteSystem sys(p.ring, p.alphabet);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const FreePoly& rel = p.relations[i];
    Word lhs;
    if (i < p.orientation.size() && p.orientation[i]) {
      lhs = *p.orientation[i];
    } else {
      lhs = rel.terms().rbegin()->first;
    }
    Scalar lc = rel.coefficient(lhs);
    if (!p.ring.is_unit(lc)) {
      throw std::invalid_argument("relation " + std::to_string(i + 1) + " has non-unit coefficient on " +
                                  format_word(lhs, p.alphabet));
    }
    FreePoly monic = scale(p.ring.inverse(lc), rel);
    FreePoly rhs = FreePoly::monomial(p.ring, p.alphabet, lhs) - monic;
    sys.add_rule({"R" + std::to_string(i + 1), lhs, std::move(rhs)});
  }
  return sys;
}

}  // namespace matpres
