#pragma once

#include <cstdint>
#include <string>

#include "planetree/enumerate.hpp"

namespace planetree {

// One invocation of the treecorr binary. Exactly one command; everything an
// artifact depends on lives here, never in the environment, so a config
// reproduces its output byte for byte.
struct RunConfig {
  std::string command;
  std::int64_t order = 200;
  std::int64_t n = 0;
  std::int64_t m = 1000;
  std::uint64_t seed = 0;
  std::string pair;      // "sigma:z"
  std::string system;    // "SZ"
  std::string check = "all";
  std::string stats = "sigma,z,rho,d,w";
  std::string tree;      // balanced-parentheses word
  std::string window;    // "LO:HI" growth-fit window override
  std::string format = "csv";
  std::string path;      // empty -> stdout
  std::int64_t enum_cap = kDefaultEnumerationCap;
};

// The only float rendering any artifact uses: 12 significant digits.
std::string format_float(double v);

int run(const RunConfig& cfg);

// Parses argv (CLI11 grammar), then dispatches. Exit codes: 0 success,
// 1 failed check or execution error, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace planetree
