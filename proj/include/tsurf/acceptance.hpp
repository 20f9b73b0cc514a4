#pragma once

#include "tsurf/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tsurf {

enum class AcceptanceScope { arith, marked_torus, fiber, dsym, all };
AcceptanceScope parse_scope(const std::string& name);
std::string scope_name(AcceptanceScope scope);

enum class CheckStatus { pass, fail, skipped };
std::string status_name(CheckStatus s);

struct CheckResult {
  std::string id;      // criterion, e.g. "A4"
  std::string anchor;  // statement verified, e.g. "fiber.hurwitz-total"
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  double seconds = 0.0;
};

struct ReportBundle {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  std::string version;
  bool ok() const;  // no failed check
};

// Independent cylinder count for the n x n marked torus with marks at (0,0) and (a,b)/n.
using CylinderOracle = std::function<long long(int n, int a, int b, const Rational& T)>;

struct AcceptanceOptions {
  bool slow = false;          // adds the degree 4 and 5 fiber builds
  CylinderOracle oracle;      // exact small-T comparison is skipped when empty
};

ReportBundle run_acceptance(AcceptanceScope scope, const AcceptanceOptions& opts = {});

}  // namespace tsurf
