#pragma once

// Runs every algebraic identity and commutation check over a grid of sizes
// and collects one row per identity.

#include <string>
#include <vector>

namespace altdec {

struct IdentityRow {
  std::string name;
  int grid_size = 0;  // instances checked
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

struct VerifyReport {
  int max_m = 0;
  std::vector<IdentityRow> rows;

  bool all_pass() const;
  std::string to_json() const;
};

/// Integer identities use tolerance 1e-14, floating-point ones 1e-10.
/// "_stated" rows compare against closed forms as usually written; the
/// matching "_corrected" rows compare against the forms that actually hold.
VerifyReport verify_all(int max_m);

}  // namespace altdec
