#pragma once

// Named arithmetic checks behind `gmlat verify-paper`. Each check carries a
// short formula anchor identifying the statement it pins.

#include <functional>
#include <string>
#include <vector>

namespace gmlat {

struct VerifyOptions {
  /// Build the Mukai lattice with E8 instead of E8(-1).
  bool mukai_sign_fault = false;
};

struct PaperCheck {
  std::string name;
  std::string anchor;
  /// Returns an empty string on success, otherwise what went wrong.
  std::function<std::string(const VerifyOptions&)> run;
};

struct CheckOutcome {
  std::string name;
  std::string anchor;
  bool passed = false;
  std::string detail;
  double millis = 0;
};

const std::vector<PaperCheck>& paper_checks();

std::vector<CheckOutcome> run_paper_checks(const VerifyOptions& options = {});

}  // namespace gmlat
