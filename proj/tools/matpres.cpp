#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "matpres/errors.hpp"

using namespace matpres::cli;

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, certificates and rank computations for presentations of matrix rings"};
  app.require_subcommand(1);
  Io io{std::cout, std::cerr};

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "certify <x,y | x^n, y^n, xy + y^(n-1)x^(n-1) - 1> = Mat_n(Z)");
  certify->add_option("--n", cert.n, "matrix size")->required();
  certify->add_option("--budget", cert.budget, "step budget per reduction")->capture_default_str();
  certify->add_option("--jobs", cert.jobs, "worker threads")->capture_default_str();
  certify->add_option("--trace", cert.trace_path, "write the certificate with all traces to this file");

  CertifyArgs certm;
  auto* certify_mod = app.add_subcommand("certify-mod", "certify the Z/N variant: xy + (N+1)y^(n-1)x^(n-1) = 1");
  certify_mod->add_option("--n", certm.n, "matrix size")->required();
  certify_mod->add_option("--N", certm.modulus, "modulus")->required();
  certify_mod->add_option("--budget", certm.budget, "step budget per reduction")->capture_default_str();
  certify_mod->add_option("--jobs", certm.jobs, "worker threads")->capture_default_str();
  certify_mod->add_option("--trace", certm.trace_path, "write the certificate with all traces to this file");

  NormalizeArgs norm;
  auto* normalize = app.add_subcommand("normalize", "normal form of a polynomial");
  auto* pre = normalize->add_option("--preset", norm.preset, "kassabov:n, kassabov-mod:n,N, guralnick:p, variant2:n");
  normalize->add_option("--file", norm.file, "presentation file")->excludes(pre);
  normalize->add_option("--poly", norm.poly, "polynomial text")->required();
  normalize->add_option("--budget", norm.budget, "step budget")->capture_default_str();
  normalize->add_option("--strategy", norm.strategy, "leftmost, rightmost or adaptive")->capture_default_str();
  normalize->add_option("--trace", norm.trace_path, "write the reduction trace to this file");
  normalize->add_flag("--plain", norm.plain, "print only the normal form");

  int v2n = 0;
  auto* variant2 = app.add_subcommand("variant2", "dual-number witness against the two-relation variant");
  variant2->add_option("--n", v2n, "matrix size")->required();

  std::string gp;
  std::size_t gbudget = 1'000'000, grules = 64;
  auto* gur = app.add_subcommand("guralnick", "<x,y | y^p = 1, x^p = x, xy = y(x+1)> over F_p");
  gur->add_option("--p", gp, "prime")->required();
  gur->add_option("--budget", gbudget, "step budget for completion")->capture_default_str();
  gur->add_option("--max-rules", grules, "rule cap for completion")->capture_default_str();

  RelmodArgs rel;
  auto* relmod = app.add_subcommand("relmod", "rank of the trivial-extension closure");
  relmod->add_option("--n", rel.n, "matrix size")->capture_default_str();
  relmod->add_option("--d", rel.d, "number of generators (truncates, or pads with the identity)");
  relmod->add_option("--gens", rel.gens, "shift, shift-sum, sum-shift, a JSON array of matrices, or @file")
      ->capture_default_str();

  BimodArgs bim;
  auto* bimod = app.add_subcommand("bimod", "bounded-degree membership in the span of bimodule generators");
  bimod->add_option("--n", bim.n, "matrix size")->capture_default_str();
  bimod->add_option("--D", bim.D, "degree bound (default 3n)");
  bimod->add_option("--targets", bim.targets, "';'-separated targets (default x^n;y^n)");
  bimod->add_option("--gens", bim.gens, "';'-separated generators");
  bimod->add_option("--relations", bim.relations, "';'-separated relations, or none");
  bimod->add_flag("--sweep", bim.sweep, "try every degree bound up to D");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "check a certificate file without the rewrite engine");
  replay->add_option("path", replay_path, "certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*certify) return cmd_certify(cert, io);
    if (*certify_mod) return cmd_certify_mod(certm, io);
    if (*normalize) return cmd_normalize(norm, io);
    if (*variant2) return cmd_variant2(v2n, io);
    if (*gur) return cmd_guralnick(gp, gbudget, grules, io);
    if (*relmod) return cmd_relmod(rel, io);
    if (*bimod) return cmd_bimod(bim, io);
    if (*replay) return cmd_replay(replay_path, io);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const matpres::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
