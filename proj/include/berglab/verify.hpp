#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace berglab {

/// One verification line. `got` and `want` are the compared quantities (for
/// error checks, the observed error against 0); `tol` is the allowed slack.
struct CheckResult {
  std::string name;
  double got = 0.0;
  double want = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// ball, fock, halfspace, thm2, thm2-oracle, thm3, thm1, stokes, identities,
/// laplace, properties; "all" runs every one in that order.
const std::vector<std::string>& suite_names();
bool is_suite_name(std::string_view name);

std::vector<CheckResult> run_suite(std::string_view name);

/// `PASS|FAIL,<check>,<got>,<want>,<tol>`
std::string format_check(const CheckResult& check);

}  // namespace berglab
