#include "strength2_impl.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hermoa::detail {

#ifdef _OPENMP

StrengthReport strength2_parallel(const OrthogonalArray& a, int threads) {
  StrengthReport report;
  report.t = 2;
  const std::uint64_t qt = std::uint64_t(a.q) * a.q;
  const std::uint64_t expected = a.runs / qt;
  bool uniform = a.runs % qt == 0;

  // Flatten the upper-triangular pair index space.
  const std::uint64_t pairs = std::uint64_t(a.k) * (a.k - 1) / 2;
  if (threads <= 0) threads = omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    std::vector<Violation> local;
    bool local_ok = true;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(pairs); ++idx) {
      // Invert idx -> (r1, r2) with r1 < r2.
      std::uint64_t rem = static_cast<std::uint64_t>(idx);
      unsigned r1 = 0;
      while (rem >= a.k - 1 - r1) {
        rem -= a.k - 1 - r1;
        ++r1;
      }
      unsigned r2 = r1 + 1 + static_cast<unsigned>(rem);
      if (!check_row_pair(a, r1, r2, expected, local)) local_ok = false;
    }
#pragma omp critical
    {
      if (!local_ok) uniform = false;
      report.violations.insert(report.violations.end(), local.begin(), local.end());
    }
  }

  report.uniform = uniform;
  report.index = uniform ? expected : 0;
  return report;
}

#else

StrengthReport strength2_parallel(const OrthogonalArray& a, int) {
  return strength2_serial(a);
}

#endif

}  // namespace hermoa::detail
