#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kazhdan/experiments.hpp"

namespace kazhdan::cli {

// Bad flag or flag value; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& message)
      : std::runtime_error(flag + ": " + message), flag_(flag) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

// Raw sweep flags as given on the command line; empty string means absent.
struct SweepFlags {
  std::string experiment;
  std::string model;
  std::string m, n, l, d, v, M, p;
  std::string trials;
  std::string seed;
  std::string jobs;
  std::string mode;
  std::string format;
  std::string friedman_c, bipartite_eps, chung_g;
  bool timing = false;
};

struct NormalizedSweep {
  SweepConfig config;
  std::string format;  // csv or jsonl
  std::vector<std::string> echo;  // "key=value" lines for the output header
};

NormalizedSweep validate_config(const SweepFlags& flags);

// args excludes the program name. Machine output goes to `out` (or --out),
// one-line summaries and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kazhdan::cli
