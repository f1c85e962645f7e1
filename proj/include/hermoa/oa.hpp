#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hermoa/geometry.hpp"

namespace hermoa {

constexpr std::uint64_t kDefaultCellCap = 100'000'000;

// Returns the effective cell cap: HERMOA_CELL_CAP from the environment
// when set, otherwise the given default.
std::uint64_t cell_cap(std::uint64_t fallback = kDefaultCellCap);

// k x N symbol matrix over {0..q-1}, stored row-major, with the claimed
// strength/index metadata and optional column keys (the affine points
// the columns were evaluated at).
struct OrthogonalArray {
  unsigned q = 0;
  unsigned k = 0;
  std::uint64_t runs = 0;  // N
  unsigned strength = 0;   // claimed t
  std::uint64_t index = 0; // claimed mu
  std::vector<std::uint8_t> cells;
  std::vector<std::vector<Fe>> col_keys;

  std::uint8_t at(unsigned row, std::uint64_t col) const {
    return cells[std::uint64_t(row) * runs + col];
  }
  std::uint8_t& at(unsigned row, std::uint64_t col) {
    return cells[std::uint64_t(row) * runs + col];
  }
  std::vector<std::uint8_t> column(std::uint64_t col) const;
};

struct Violation {
  std::vector<unsigned> rows;
  std::vector<std::uint8_t> symbols;
  std::uint64_t count = 0;
  std::uint64_t expected = 0;
};

struct StrengthReport {
  unsigned t = 0;
  bool uniform = false;
  std::uint64_t index = 0;  // N / q^t when uniform
  std::vector<Violation> violations;
};

struct ColumnReport {
  bool simple = false;
  // multiplicity -> number of column classes with that multiplicity
  std::map<std::uint64_t, std::uint64_t> multiplicity_histogram;
  std::vector<std::vector<std::uint64_t>> duplicate_classes;  // column indices
};

struct VerificationReport {
  unsigned achieved_strength = 0;
  std::map<unsigned, std::uint64_t> index_at;  // only uniform strengths
  std::vector<unsigned> nonuniform_at;
  ColumnReport columns;
  std::vector<Violation> violations;
};

// Rows are the representative forms, columns all affine points in
// lexicographic order; cells are subfield symbols of the form values.
OrthogonalArray build_A(const HermitianGeometry& geo,
                        std::uint64_t cap = cell_cap());

// Same rows, columns restricted to points whose last coordinate lies
// in the trace transversal C.
OrthogonalArray build_A0(const HermitianGeometry& geo,
                         std::uint64_t cap = cell_cap());

// Exact exhaustive counting of all t-tuples over every t-subset of
// rows; never statistical. threads <= 0 picks the hardware default.
StrengthReport verify_strength(const OrthogonalArray& a, unsigned t, int threads = 0);
// Serial reference for the t = 2 kernel, kept independent of the
// OpenMP path for testing and benchmarking.
StrengthReport verify_strength_serial(const OrthogonalArray& a, unsigned t);

ColumnReport column_multiplicities(const OrthogonalArray& a);

// Full report: strength 1..max_t plus column simplicity.
VerificationReport verify(const OrthogonalArray& a, unsigned max_t, int threads = 0);

// Text format: header "N k q t mu", then one run (column) per line as
// k space-separated symbols. ASCII, LF endings, no trailing whitespace.
void export_oa(const OrthogonalArray& a, std::ostream& out);
void export_oa_file(const OrthogonalArray& a, const std::string& path);
OrthogonalArray import_oa(std::istream& in);
OrthogonalArray import_oa_file(const std::string& path);

}  // namespace hermoa
