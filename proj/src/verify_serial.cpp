#include "strength2_impl.hpp"

namespace hermoa::detail {

StrengthReport strength2_serial(const OrthogonalArray& a) {
  StrengthReport report;
  report.t = 2;
  const std::uint64_t qt = std::uint64_t(a.q) * a.q;
  const std::uint64_t expected = a.runs / qt;
  report.uniform = a.runs % qt == 0;
  for (unsigned r1 = 0; r1 < a.k; ++r1)
    for (unsigned r2 = r1 + 1; r2 < a.k; ++r2)
      if (!check_row_pair(a, r1, r2, expected, report.violations)) report.uniform = false;
  report.index = report.uniform ? expected : 0;
  return report;
}

}  // namespace hermoa::detail
