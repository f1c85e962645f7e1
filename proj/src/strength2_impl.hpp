#pragma once

#include <cstdint>
#include <vector>

#include "hermoa/oa.hpp"

namespace hermoa::detail {

// Exact symbol-pair counts for one row pair; appends a violation per
// non-uniform count. Returns true when all q*q counts equal expected.
inline bool check_row_pair(const OrthogonalArray& a, unsigned r1, unsigned r2,
                           std::uint64_t expected, std::vector<Violation>& out) {
  const unsigned q = a.q;
  std::vector<std::uint64_t> counts(std::size_t(q) * q, 0);
  const std::uint8_t* row1 = a.cells.data() + std::uint64_t(r1) * a.runs;
  const std::uint8_t* row2 = a.cells.data() + std::uint64_t(r2) * a.runs;
  for (std::uint64_t col = 0; col < a.runs; ++col)
    ++counts[std::size_t(row1[col]) * q + row2[col]];
  bool ok = true;
  for (unsigned s1 = 0; s1 < q; ++s1) {
    for (unsigned s2 = 0; s2 < q; ++s2) {
      std::uint64_t c = counts[std::size_t(s1) * q + s2];
      if (c == expected) continue;
      ok = false;
      out.push_back(Violation{{r1, r2},
                              {static_cast<std::uint8_t>(s1), static_cast<std::uint8_t>(s2)},
                              c,
                              expected});
    }
  }
  return ok;
}

StrengthReport strength2_serial(const OrthogonalArray& a);
StrengthReport strength2_parallel(const OrthogonalArray& a, int threads);

}  // namespace hermoa::detail
