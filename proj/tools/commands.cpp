#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "matpres/isocert.hpp"
#include "matpres/matrep.hpp"
#include "matpres/presentation.hpp"
#include "matpres/relmod.hpp"
#include "matpres/replay.hpp"

namespace matpres::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kSchemaVersion = 1;

Json report(const std::string& task, Json params) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["task"] = task;
  j["params"] = std::move(params);
  return j;
}

int emit(Json& j, const std::string& verdict, Clock::time_point t0, Io io, const std::string& summary) {
  j["verdict"] = verdict;
  j["seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
  io.out << j.dump(2) << "\n";
  io.err << j["task"].get<std::string>() << ": " << verdict;
  if (!summary.empty()) io.err << " (" << summary << ")";
  io.err << "\n";
  if (verdict == "failed") return kFailed;
  if (verdict == "budget-exceeded") return kBudget;
  return kOk;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream s(text);
  while (std::getline(s, cur, sep)) {
    if (cur.find_first_not_of(" \t\n") != std::string::npos) out.push_back(cur);
  }
  return out;
}

std::string certificate_verdict(const IsomorphismCertificate& c) {
  switch (c.verdict) {
    case Verdict::Verified: return "certified";
    case Verdict::Failed: return "failed";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "failed";
}

int finish_certificate(const std::string& task, Json params, const IsomorphismCertificate& c,
                       const std::string& trace_path, Clock::time_point t0, Io io) {
  Json j = report(task, std::move(params));
  j["certificate"] = Json::parse(c.to_json(false));
  if (!trace_path.empty()) {
    write_file(trace_path, c.to_json(true) + "\n");
    j["trace_file"] = trace_path;
  }
  std::string summary = std::to_string(c.components.size()) + " components";
  if (!c.failing.empty()) summary += ", first unverified: " + c.failing;
  return emit(j, certificate_verdict(c), t0, io, summary);
}

CertOptions options(const CertifyArgs& a) {
  CertOptions o;
  o.budget.max_steps = a.budget;
  o.jobs = a.jobs == 0 ? 1 : a.jobs;
  return o;
}

Matrix shift_matrix(std::size_t n, bool upper) {
  Matrix m(CoeffRing::integers(), n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (upper) m.set(i, i + 1, 1);
    else m.set(i + 1, i, 1);
  }
  return m;
}

std::vector<Matrix> relmod_generators(std::size_t n, const std::string& spec) {
  Matrix X = shift_matrix(n, true), Y = shift_matrix(n, false);
  if (spec == "shift") return {X, Y};
  if (spec == "shift-sum") return {X, X + Y};
  if (spec == "sum-shift") return {X + Y, Y};
  std::string text = !spec.empty() && spec[0] == '@' ? read_file(spec.substr(1)) : spec;
  Json arr;
  try {
    arr = Json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--gens is neither a preset nor a JSON array of matrices: " + std::string(e.what()));
  }
  if (!arr.is_array() || arr.empty()) throw UsageError("--gens must be a non-empty JSON array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : arr) {
    Matrix mat = Matrix::from_json(m.dump(), CoeffRing::integers());
    if (mat.dim() != n) throw UsageError("generator matrix has the wrong size");
    out.push_back(std::move(mat));
  }
  return out;
}

Json witness_json(const std::vector<WitnessTerm>& w) {
  Json arr = Json::array();
  for (const auto& t : w) {
    Json e;
    e["coeff"] = t.coeff.get_str();
    if (t.product) {
      e["kind"] = "relation-product";
      e["first"] = {{"relation", t.r1}, {"left", format_word(t.u1, 2)}, {"right", format_word(t.v1, 2)}};
      e["second"] = {{"relation", t.r2}, {"left", format_word(t.u2, 2)}, {"right", format_word(t.v2, 2)}};
    } else {
      e["kind"] = "generator";
      e["generator"] = t.gen;
      e["left"] = format_word(t.left, 2);
      e["right"] = format_word(t.right, 2);
    }
    arr.push_back(std::move(e));
  }
  return arr;
}

std::vector<FreePoly> poly_list(const std::string& text) {
  std::vector<FreePoly> out;
  for (const auto& s : split(text, ';')) out.push_back(poly(s));
  return out;
}

}  // namespace

int cmd_certify(const CertifyArgs& a, Io io) {
  if (a.n < 2) throw UsageError("--n must be at least 2");
  auto t0 = Clock::now();
  IsomorphismCertificate c = certify_isomorphism(a.n, options(a));
  Json params{{"n", a.n}, {"budget", a.budget}};
  return finish_certificate("certify", std::move(params), c, a.trace_path, t0, io);
}

int cmd_certify_mod(const CertifyArgs& a, Io io) {
  if (a.n < 2) throw UsageError("--n must be at least 2");
  BigInt modulus;
  if (modulus.set_str(a.modulus, 10) != 0 || modulus < 2) throw UsageError("--N must be an integer >= 2");
  auto t0 = Clock::now();
  IsomorphismCertificate c = verify_modN(a.n, modulus, options(a));
  Json params{{"n", a.n}, {"N", modulus.get_str()}, {"budget", a.budget}};
  return finish_certificate("certify-mod", std::move(params), c, a.trace_path, t0, io);
}

int cmd_normalize(const NormalizeArgs& a, Io io) {
  if (a.preset.empty() == a.file.empty()) throw UsageError("give exactly one of --preset and --file");
  Presentation pr;
  try {
    pr = a.preset.empty() ? parse_presentation(read_file(a.file)) : preset(a.preset);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  FreePoly p = parse_poly(a.poly, pr.ring, pr.alphabet);
  RewriteSystem sys = rewrite_system(pr);
  Budget budget{a.budget};
  auto t0 = Clock::now();
  Reduction r = [&] {
    if (a.strategy == "leftmost") return normalize(p, sys, budget);
    if (a.strategy == "rightmost") return normalize(p, sys, budget, TraceMode::Record, RedexStrategy::Rightmost);
    if (a.strategy == "adaptive") return normalize_adaptive(p, sys, budget);
    throw UsageError("--strategy must be leftmost, rightmost or adaptive");
  }();
  if (!a.trace_path.empty()) write_file(a.trace_path, r.trace.to_text());
  if (a.plain) {
    io.out << r.result.to_string() << "\n";
    return r.ok() ? kOk : kBudget;
  }
  Json j = report("normalize", {{"presentation", pr.name}, {"input", p.to_string()}, {"budget", a.budget},
                                {"strategy", a.strategy}});
  j["normal_form"] = r.result.to_string();
  j["steps"] = r.steps;
  if (!a.trace_path.empty()) j["trace_file"] = a.trace_path;
  return emit(j, r.ok() ? "certified" : "budget-exceeded", t0, io, r.result.to_string());
}

int cmd_variant2(int n, Io io) {
  if (n < 2) throw UsageError("--n must be at least 2");
  auto t0 = Clock::now();
  Json j = report("variant2", {{"n", n}});
  auto w = dual_number_witness(n);
  if (!w) {
    j["witness"] = nullptr;
    j["note"] = "no lift x -> X + tA, y -> Y + tB with nonzero x^n exists";
    return emit(j, "inconclusive", t0, io, "no dual-number witness");
  }
  Presentation pr = two_relation_variant(n);
  RelationCheck rc = check_relations(pr, w->assignment);
  FreePoly xn = pow(poly("x"), static_cast<unsigned>(n)), yn = pow(poly("y"), static_cast<unsigned>(n));
  Matrix xi = eval_poly(xn, w->assignment), yi = eval_poly(yn, w->assignment);
  // Recomputed from the assignment, not taken from the search.
  bool ok = rc.all_zero() && !xi.is_zero() && xi == w->x_power && yi == w->y_power;
  j["assignment"] = Json::parse(w->assignment.to_json());
  Json rels = Json::array();
  for (const auto& r : rc.relations) {
    rels.push_back({{"relation", pr.relations[r.index].to_string()}, {"zero", r.zero}});
  }
  j["relations"] = rels;
  j["x_power"] = Json::parse(xi.to_json());
  j["y_power"] = Json::parse(yi.to_json());
  j["x_power_nonzero"] = !xi.is_zero();
  j["solution_kernel_rank"] = w->kernel_rank;
  j["conclusion"] = ok ? "the presented ring maps onto a ring where x^n != 0, so it is not Mat_n(Z)" : "";
  return emit(j, ok ? "certified" : "failed", t0, io, ok ? "witness verified" : "witness rejected");
}

int cmd_guralnick(const std::string& p_text, std::size_t budget, std::size_t max_rules, Io io) {
  BigInt p;
  if (p.set_str(p_text, 10) != 0 || p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw UsageError("--p must be a prime");
  }
  if (p > 7) throw UsageError("--p above 7 is outside the tested range");
  auto t0 = Clock::now();
  Presentation pr = guralnick(p);
  Assignment a = cyclic_assignment(p);
  RelationCheck rc = check_relations(pr, a);
  std::size_t pi = p.get_ui();
  bool gen = generation_check(a.images, pi, p);
  CompletionResult c = complete(rewrite_system(pr), Budget{budget}, max_rules);

  Json j = report("guralnick", {{"p", p.get_str()}, {"budget", budget}, {"max_rules", max_rules}});
  j["presentation"] = format_presentation(pr);
  j["assignment"] = Json::parse(a.to_json());
  j["homomorphism"] = rc.all_zero();
  j["generation"] = gen;
  Json comp;
  comp["ok"] = c.ok();
  comp["rules"] = Json::array();
  for (const auto& r : c.system.rules()) comp["rules"].push_back(format_word(r.lhs, 2) + " -> " + r.rhs.to_string());
  if (!c.ok()) comp["message"] = c.message;
  j["completion"] = comp;

  BigInt expected;
  mpz_pow_ui(expected.get_mpz_t(), p.get_mpz_t(), pi * pi);
  j["expected_order"] = expected.get_str();
  if (!c.ok()) {
    std::string v = c.failure == CompletionFailure::BudgetExceeded ? "budget-exceeded" : "failed";
    return emit(j, v, t0, io, "completion stopped: " + c.message);
  }
  IrreducibleCount cnt;
  for (std::size_t len = pi; len <= 8 * pi; len *= 2) {
    cnt = irreducible_words(c.system, len);
    if (cnt.finite) break;
  }
  j["irreducible_words"] = cnt.count;
  j["finite"] = cnt.finite;
  BigInt order;
  mpz_pow_ui(order.get_mpz_t(), p.get_mpz_t(), cnt.count);
  j["quotient_order"] = cnt.finite ? Json(order.get_str()) : Json(nullptr);
  bool ok = rc.all_zero() && gen && cnt.finite && order == expected;
  return emit(j, ok ? "certified" : "failed", t0, io, "quotient order " + (cnt.finite ? order.get_str() : "infinite?"));
}

int cmd_relmod(const RelmodArgs& a, Io io) {
  if (a.n < 1) throw UsageError("--n must be at least 1");
  std::size_t n = static_cast<std::size_t>(a.n);
  std::vector<Matrix> mats = relmod_generators(n, a.gens);
  if (a.d) {
    if (*a.d < 1) throw UsageError("--d must be at least 1");
    std::size_t d = static_cast<std::size_t>(*a.d);
    if (d < mats.size()) mats.resize(d);
    while (mats.size() < d) mats.push_back(Matrix::identity(CoeffRing::integers(), n));
  }
  auto t0 = Clock::now();
  Theorem3Report r;
  try {
    r = theorem3_check(n, mats, a.gens);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json j = report("relmod", {{"n", a.n}, {"d", mats.size()}, {"gens", a.gens}});
  j["result"] = Json::parse(r.to_json());
  j["result"].erase("seconds");
  std::string summary = "rank(L~) = " + std::to_string(r.inferred_rank_L) + ", bound " + std::to_string(r.bound);
  return emit(j, r.meets_bound ? "certified" : "failed", t0, io, summary);
}

int cmd_bimod(const BimodArgs& a, Io io) {
  if (a.n < 2) throw UsageError("--n must be at least 2");
  const int n = a.n;
  std::string xn = "x^" + std::to_string(n), yn = "y^" + std::to_string(n);
  std::string nm1 = std::to_string(n - 1);
  std::vector<FreePoly> gens, rels, targets;
  try {
    gens = poly_list(a.gens.empty() ? "x*y + y^" + nm1 + "*x^" + nm1 + " - 1; x*" + yn + " + y*" + xn : a.gens);
    rels = a.relations == "none" ? std::vector<FreePoly>{}
           : a.relations.empty() ? kassabov(n).relations
                                 : poly_list(a.relations);
    targets = poly_list(a.targets.empty() ? xn + ";" + yn : a.targets);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (gens.empty() || targets.empty()) throw UsageError("need at least one generator and one target");
  std::size_t D = a.D.value_or(static_cast<std::size_t>(3 * n));
  for (const auto& t : targets) {
    if (t.degree() > D) throw UsageError("--D is below the degree of target " + t.to_string());
  }

  auto t0 = Clock::now();
  Json params{{"n", n}, {"D", D}, {"sweep", a.sweep}};
  params["generators"] = Json::array();
  for (const auto& g : gens) params["generators"].push_back(g.to_string());
  params["relations"] = Json::array();
  for (const auto& r : rels) params["relations"].push_back(r.to_string());
  Json j = report("bimod", std::move(params));
  bool all_member = true, all_valid = true;
  Json results = Json::array();
  std::string summary;
  for (const auto& t : targets) {
    Json tj;
    tj["target"] = t.to_string();
    MembershipResult last;
    std::size_t from = a.sweep ? std::max<std::size_t>(t.degree(), 1) : D;
    Json per = Json::array();
    for (std::size_t k = from; k <= D; ++k) {
      last = bimodule_membership(t, gens, rels, k);
      per.push_back({{"D", k}, {"verdict", last.verdict()}, {"dimension", last.dimension}, {"spanning", last.spanning}});
      if (last.member) {
        all_valid = all_valid && last.witness_valid;
        if (a.sweep) break;
      }
    }
    if (a.sweep) tj["sweep"] = per;
    tj["verdict"] = last.verdict();
    tj["dimension"] = last.dimension;
    tj["spanning"] = last.spanning;
    if (last.member) {
      tj["witness_valid"] = last.witness_valid;
      tj["witness"] = witness_json(last.witness);
    }
    all_member = all_member && last.member;
    if (!summary.empty()) summary += ", ";
    summary += t.to_string() + ": " + last.verdict();
    results.push_back(std::move(tj));
  }
  j["targets"] = results;
  std::string verdict = !all_valid ? "failed" : all_member ? "certified" : "inconclusive";
  return emit(j, verdict, t0, io, summary);
}

int cmd_replay(const std::string& path, Io io) {
  std::string text = read_file(path);
  auto t0 = Clock::now();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(path + " is not JSON: " + e.what());
  }
  if (doc.contains("certificate")) text = doc["certificate"].dump();
  check::CertificateCheck c = check::check_certificate(text);
  Json j = report("replay", {{"path", path}});
  j["traces"] = c.traces;
  j["steps"] = c.steps;
  j["problems"] = c.problems;
  return emit(j, c.ok ? "certified" : "failed", t0, io,
              std::to_string(c.traces) + " traces, " + std::to_string(c.problems.size()) + " problems");
}

}  // namespace matpres::cli
