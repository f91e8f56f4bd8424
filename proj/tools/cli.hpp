#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <mpfr.h>

namespace apolar::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDegenerate = 2, kPrecision = 3 };

struct RunConfig {
  /// Q, Fp:<p> or C:<bits>.
  std::string field = "Q";
  mpfr_prec_t precision = 256;
  /// Relative residual a float certificate must meet.
  double tolerance = 1e-40;
  /// Float rank decisions treat pivots below 2^-pivot_bits (relative) as
  /// zero; 0 means precision / 2.
  long pivot_bits = 0;
  std::uint64_t seed = 1;
  bool verbose = false;
};

using EnvLookup = std::function<const char*(const char*)>;

/// Runs one command line (args excludes the program name). Structured output
/// goes to `out`, logs to `err`. Flags override APOLAR_SEED,
/// APOLAR_PRECISION and APOLAR_TOL, which override the defaults.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env);
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apolar::cli
