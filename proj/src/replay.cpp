#include "matpres/replay.hpp"

#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "matpres/errors.hpp"

namespace matpres::check {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

// Value of `key=` up to the next space, or the quoted string for key="...".
std::string field(std::string_view line, std::string_view key, std::size_t lineno) {
  std::string pat = std::string(" ") + std::string(key) + "=";
  std::size_t pos = line.find(pat);
  if (pos == std::string_view::npos) throw ParseError("missing " + std::string(key), lineno, 1);
  std::size_t b = pos + pat.size();
  if (b < line.size() && line[b] == '"') {
    std::size_t e = line.find('"', b + 1);
    if (e == std::string_view::npos) throw ParseError("unterminated quote", lineno, b + 1);
    return std::string(line.substr(b + 1, e - b - 1));
  }
  std::size_t e = line.find(' ', b);
  return std::string(line.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
}

Scalar parse_coeff(const std::string& text, const CoeffRing& ring, unsigned d) {
  FreePoly c = parse_poly(text, ring, d);
  if (c.size() > 1 || (c.size() == 1 && !c.terms().begin()->first.empty())) {
    throw std::invalid_argument("coefficient is not a constant: " + text);
  }
  return c.coefficient(Word{});
}

}  // namespace

ParsedTrace parse_trace(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 3) throw ParseError("trace too short", 1, 1);
  std::string_view head = lines[0];
  if (!starts_with(head, "trace ")) throw ParseError("expected 'trace' header", 1, 1);
  std::string header = " " + std::string(head.substr(6));
  ParsedTrace t{parse_ring(field(header, "ring", 1)), 0, {}, {}, {}};
  t.alphabet = static_cast<unsigned>(std::stoul(field(header, "gens", 1)));
  auto poly_at = [&](std::string_view body, std::size_t lineno) {
    try {
      return parse_poly(trim(body), t.ring, t.alphabet);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad polynomial: ") + e.what(), lineno, 1);
    }
  };
  if (!starts_with(lines[1], "start:")) throw ParseError("expected 'start:'", 2, 1);
  t.start = poly_at(lines[1].substr(6), 2);
  std::size_t k = 2;
  for (; k + 1 < lines.size() && starts_with(lines[k], "step "); k += 2) {
    std::string line = " " + std::string(lines[k]);
    ParsedStep s;
    s.rule = field(line, "rule", k + 1);
    std::string l = field(line, "left", k + 1), r = field(line, "right", k + 1);
    s.left = l.empty() ? Word{} : parse_word(l, t.alphabet);
    s.right = r.empty() ? Word{} : parse_word(r, t.alphabet);
    s.coeff = parse_coeff(field(line, "coeff", k + 1), t.ring, t.alphabet);
    s.after = poly_at(lines[k + 1], k + 2);
    t.steps.push_back(std::move(s));
  }
  if (k >= lines.size() || !starts_with(lines[k], "end:")) throw ParseError("expected 'end:'", k + 1, 1);
  t.end = poly_at(lines[k].substr(4), k + 1);
  return t;
}

ReplayOutcome replay(const ParsedTrace& trace, const std::map<std::string, FreePoly>& relators) {
  const FreePoly* before = &trace.start;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const ParsedStep& s = trace.steps[k];
    auto it = relators.find(s.rule);
    if (it == relators.end()) return {false, "step " + std::to_string(k + 1) + " uses unknown rule " + s.rule};
    if (!(it->second.ring() == trace.ring)) return {false, "rule " + s.rule + " lives over another ring"};
    FreePoly expect = *before - scale(s.coeff, it->second.multiplied(s.left, s.right));
    if (!(expect == s.after)) return {false, "step " + std::to_string(k + 1) + " does not match rule " + s.rule};
    before = &s.after;
  }
  if (!(*before == trace.end)) return {false, "end line differs from the last step"};
  return {};
}

namespace {

struct Checker {
  CertificateCheck out;
  std::map<std::string, FreePoly> relators;
  const CoeffRing z = CoeffRing::integers();

  void problem(std::string p) {
    out.ok = false;
    if (out.problems.size() < 50) out.problems.push_back(std::move(p));
  }

  // Replays `text`; returns the parsed trace, or nothing after recording a problem.
  std::optional<ParsedTrace> run(const std::string& text, const std::string& what) {
    try {
      ParsedTrace t = parse_trace(text);
      ReplayOutcome r = replay(t, relators);
      ++out.traces;
      out.steps += t.steps.size();
      if (!r.ok) {
        problem(what + ": " + r.message);
        return std::nullopt;
      }
      return t;
    } catch (const std::exception& e) {
      problem(what + ": " + e.what());
      return std::nullopt;
    }
  }

  FreePoly poly(const std::string& text) { return parse_poly(text, z, 2); }
};

std::string pw(char g, long e) { return std::string(1, g) + "^" + std::to_string(e); }

std::vector<std::string> family_relations(const std::string& kind, long n, const std::string& modulus) {
  std::string factor = kind == "kassabov-mod" ? BigInt(BigInt(modulus) + 1).get_str() + "*" : "";
  return {pw('x', n), pw('y', n), "x*y + " + factor + pw('y', n - 1) + "*" + pw('x', n - 1) + " - 1"};
}

bool basis_span(const FreePoly& p, long n) {
  for (const auto& [w, c] : p.terms()) {
    std::size_t k = 0;
    while (k < w.size() && w[k].index == 1) ++k;
    std::size_t a = k;
    while (k < w.size() && w[k].index == 0) ++k;
    if (k != w.size() || static_cast<long>(a) >= n || static_cast<long>(w.size() - a) >= n) return false;
  }
  return true;
}

}  // namespace

CertificateCheck check_certificate(std::string_view json_text) {
  Checker c;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    c.problem(std::string("not JSON: ") + e.what());
    return c.out;
  }
  try {
    const std::string kind = doc.at("kind");
    const long n = doc.at("n");
    const std::string modulus = doc.at("N");
    if (doc.at("ring") != "Z") c.problem("certificates are expected over Z");

    // Base rules must be exactly the family's relators, up to sign.
    std::vector<FreePoly> expected;
    if (kind == "kassabov" || kind == "kassabov-mod") {
      for (const auto& r : family_relations(kind, n, modulus)) expected.push_back(c.poly(r));
    }
    std::size_t base_seen = 0;
    for (const auto& r : doc.at("rules")) {
      const std::string id = r.at("id");
      FreePoly rel = c.poly(r.at("relator"));
      if (c.relators.count(id)) c.problem("duplicate rule id " + id);
      if (r.at("kind") == "base") {
        if (!expected.empty()) {
          if (base_seen >= expected.size() || !(rel == expected[base_seen] || rel == -expected[base_seen])) {
            c.problem("base rule " + id + " is not a relator of the presentation");
          }
        }
        ++base_seen;
      } else {
        if (!r.contains("justification")) {
          c.problem("lemma rule " + id + " has no justification");
        } else if (auto t = c.run(r.at("justification"), "lemma " + id)) {
          if (!(t->start == rel)) c.problem("lemma " + id + ": justification starts elsewhere");
          if (!t->end.is_zero()) c.problem("lemma " + id + ": justification does not end at 0");
        }
      }
      c.relators.emplace(id, std::move(rel));
    }
    if (!expected.empty() && base_seen != expected.size()) c.problem("base rule count differs from the presentation");

    const bool certified = doc.at("verdict") == "certified";
    std::set<std::string> span_inputs, torsion_inputs;
    for (const auto& comp : doc.at("components")) {
      const std::string cid = comp.at("id");
      if (certified && comp.at("verdict") != "verified") c.problem("component " + cid + " is not verified");
      if (comp.at("instances").size() != comp.at("instance_count").get<std::size_t>()) {
        if (certified) c.problem("component " + cid + ": instances not embedded (write with traces)");
        continue;
      }
      for (const auto& ex : comp.at("exhibits")) c.run(ex.at("trace"), cid + " exhibit");
      for (const auto& inst : comp.at("instances")) {
        const std::string label = cid + " " + inst.at("label").get<std::string>();
        const std::string claim = inst.at("claim");
        if (claim == "evaluation") continue;  // matrix facts, outside the trace format
        FreePoly input = c.poly(inst.at("input"));
        FreePoly want = c.poly(inst.at("expected"));
        if (cid == "span-closure") span_inputs.insert(input.to_string());
        if (cid == "torsion") torsion_inputs.insert(input.to_string());
        if (inst.contains("trace")) {
          auto t = c.run(inst.at("trace"), label);
          if (!t) continue;
          if (!(t->start == input)) c.problem(label + ": trace starts elsewhere");
          if (!(t->end == want)) c.problem(label + ": trace does not end at the claimed value");
          if (claim == "basis-span" && !basis_span(t->end, n)) c.problem(label + ": result outside the basis span");
        } else if (inst.contains("rule")) {
          auto it = c.relators.find(inst.at("rule").get<std::string>());
          if (it == c.relators.end() || !(it->second == input) || !want.is_zero()) {
            c.problem(label + ": not backed by a matching lemma rule");
          }
        } else if (inst.at("verdict") == "verified") {
          c.problem(label + ": verified without a trace");
        }
      }
    }

    if (certified && (kind == "kassabov" || kind == "kassabov-mod")) {
      for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
          std::string b = pw('y', i) + "*" + pw('x', j);
          for (const std::string& w : {"y*" + b, b + "*x", "x*" + b, b + "*y"}) {
            if (!span_inputs.count(c.poly(w).to_string())) c.problem("span closure misses " + w);
          }
          if (kind == "kassabov-mod") {
            std::string a = modulus + "*" + b + " - " + modulus + "*" + pw('y', i + 1) + "*" + pw('x', j + 1);
            if (!torsion_inputs.count(c.poly(a).to_string())) c.problem("torsion misses N*a[" + std::to_string(i) +
                                                                        "][" + std::to_string(j) + "]");
          }
        }
      }
    }
  } catch (const std::exception& e) {
    c.problem(std::string("malformed certificate: ") + e.what());
  }
  return c.out;
}

}  // namespace matpres::check
