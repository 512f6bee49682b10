#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matpres/freepoly.hpp"

// Stand-alone checker for traces and certificates. It only uses free-ring
// arithmetic and the text formats; nothing here calls the rewrite engine.
namespace matpres::check {

struct ParsedStep {
  std::string rule;
  Word left;
  Word right;
  Scalar coeff;
  FreePoly after;
};

struct ParsedTrace {
  CoeffRing ring;
  unsigned alphabet = 2;
  FreePoly start;
  std::vector<ParsedStep> steps;
  FreePoly end;
};

/// Parses the line format written by ReductionTrace::to_text. Throws ParseError.
ParsedTrace parse_trace(std::string_view text);

struct ReplayOutcome {
  bool ok = true;
  std::string message;
};

/// Re-checks before - after == coeff * left * relator * right for every step
/// and that the end line matches the last polynomial.
ReplayOutcome replay(const ParsedTrace& trace, const std::map<std::string, FreePoly>& relators);

struct CertificateCheck {
  bool ok = true;
  std::size_t traces = 0;
  std::size_t steps = 0;
  std::vector<std::string> problems;
};

/// Validates a certificate JSON document: base relators against the
/// presentation family, lemma rules in order, every embedded trace, the
/// claims attached to them, and coverage of the span-closure and torsion
/// components.
CertificateCheck check_certificate(std::string_view json_text);

}  // namespace matpres::check
