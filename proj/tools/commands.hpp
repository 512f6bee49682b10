#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace matpres::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kBudget = 2, kUsage = 64 };

/// Bad flag values and violated preconditions; main() turns it into exit 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Io {
  std::ostream& out;  // JSON report
  std::ostream& err;  // one-line summary
};

struct CertifyArgs {
  int n = 0;
  std::string modulus;  // certify-mod only
  std::size_t budget = 1'000'000;
  unsigned jobs = 1;
  std::string trace_path;
};

struct NormalizeArgs {
  std::string preset;
  std::string file;
  std::string poly;
  std::size_t budget = 1'000'000;
  std::string strategy = "leftmost";
  std::string trace_path;
  bool plain = false;
};

struct RelmodArgs {
  int n = 2;
  std::optional<int> d;
  std::string gens = "shift";
};

struct BimodArgs {
  int n = 2;
  std::optional<std::size_t> D;
  std::string targets;    // ';'-separated; default x^n;y^n
  std::string gens;       // default xy + y^(n-1)x^(n-1) - 1; xy^n + yx^n
  std::string relations;  // default: the Kassabov relations; "none" for {}
  bool sweep = false;
};

int cmd_certify(const CertifyArgs& a, Io io);
int cmd_certify_mod(const CertifyArgs& a, Io io);
int cmd_normalize(const NormalizeArgs& a, Io io);
int cmd_variant2(int n, Io io);
int cmd_guralnick(const std::string& p, std::size_t budget, std::size_t max_rules, Io io);
int cmd_relmod(const RelmodArgs& a, Io io);
int cmd_bimod(const BimodArgs& a, Io io);
int cmd_replay(const std::string& path, Io io);

}  // namespace matpres::cli
