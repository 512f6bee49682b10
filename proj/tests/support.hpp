#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <sys/wait.h>
#include <string>

#include "matpres/freepoly.hpp"

namespace testing_support {

using namespace matpres;

inline Word random_word(std::mt19937& rng, unsigned alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<unsigned> letter(0, alphabet - 1);
  Word w;
  for (std::size_t k = len(rng); k > 0; --k) w *= Word::power({letter(rng)}, 1);
  return w;
}

inline Scalar random_scalar(std::mt19937& rng, const CoeffRing& ring) {
  std::uniform_int_distribution<long> c(-9, 9);
  return ring.is_dual() ? ring.make(c(rng), c(rng)) : ring.from_integer(c(rng));
}

inline FreePoly random_poly(std::mt19937& rng, const CoeffRing& ring, unsigned alphabet = 2,
                            std::size_t terms = 4, std::size_t max_len = 4) {
  FreePoly p(ring, alphabet);
  std::uniform_int_distribution<std::size_t> count(0, terms);
  for (std::size_t k = count(rng); k > 0; --k) p.accumulate(random_word(rng, alphabet, max_len), random_scalar(rng, ring));
  return p;
}

// Runs a shell command; returns its exit status and captured stdout.
struct Run {
  int status = -1;
  std::string out;
};
inline Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace testing_support
