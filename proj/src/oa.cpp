#include "hermoa/oa.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "strength2_impl.hpp"

namespace hermoa {

std::uint64_t cell_cap(std::uint64_t fallback) {
  if (const char* env = std::getenv("HERMOA_CELL_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

std::vector<std::uint8_t> OrthogonalArray::column(std::uint64_t col) const {
  std::vector<std::uint8_t> c(k);
  for (unsigned r = 0; r < k; ++r) c[r] = at(r, col);
  return c;
}

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

OrthogonalArray build_from_columns(const HermitianGeometry& geo,
                                   const std::vector<std::vector<Fe>>& cols,
                                   std::uint64_t claimed_index, std::uint64_t cap) {
  const auto forms = geo.enumerate_representatives();
  OrthogonalArray a;
  a.q = geo.q();
  a.k = static_cast<unsigned>(forms.size());
  a.runs = cols.size();
  a.strength = 2;
  a.index = claimed_index;
  if (std::uint64_t(a.k) * a.runs > cap)
    throw std::length_error("array exceeds the cell cap");
  a.cells.resize(std::uint64_t(a.k) * a.runs);
  for (unsigned r = 0; r < a.k; ++r)
    for (std::uint64_t c = 0; c < a.runs; ++c)
      a.at(r, c) = static_cast<std::uint8_t>(
          geo.symbol_of(geo.eval_translated(forms[r], cols[c])));
  a.col_keys = cols;
  return a;
}

}  // namespace

OrthogonalArray build_A(const HermitianGeometry& geo, std::uint64_t cap) {
  const unsigned n = geo.n();
  std::vector<std::vector<Fe>> cols;
  std::vector<Fe> x(n, 0);
  do {
    cols.push_back(x);
  } while (next_tuple(x, geo.field().size()));
  return build_from_columns(geo, cols, upow(geo.q(), 2 * n - 2), cap);
}

OrthogonalArray build_A0(const HermitianGeometry& geo, std::uint64_t cap) {
  const unsigned n = geo.n();
  const auto& reps = geo.traces().coset_reps;
  std::vector<std::vector<Fe>> cols;
  std::vector<Fe> x(n, 0);
  do {
    if (std::find(reps.begin(), reps.end(), x[n - 1]) == reps.end()) continue;
    cols.push_back(x);
  } while (next_tuple(x, geo.field().size()));
  return build_from_columns(geo, cols, upow(geo.q(), 2 * n - 3), cap);
}

namespace {

// Exhaustive counting for arbitrary t over all row combinations.
StrengthReport strength_generic(const OrthogonalArray& a, unsigned t) {
  StrengthReport report;
  report.t = t;
  const std::uint64_t qt = upow(a.q, t);
  const std::uint64_t expected = a.runs / qt;
  report.uniform = a.runs % qt == 0;

  std::vector<unsigned> comb(t);
  for (unsigned i = 0; i < t; ++i) comb[i] = i;
  std::vector<std::uint64_t> counts(qt);
  for (;;) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t col = 0; col < a.runs; ++col) {
      std::uint64_t key = 0;
      for (unsigned i = 0; i < t; ++i) key = key * a.q + a.at(comb[i], col);
      ++counts[key];
    }
    for (std::uint64_t key = 0; key < qt; ++key) {
      if (counts[key] == expected) continue;
      report.uniform = false;
      Violation v;
      v.rows = comb;
      v.symbols.resize(t);
      std::uint64_t rem = key;
      for (unsigned i = t; i-- > 0;) {
        v.symbols[i] = static_cast<std::uint8_t>(rem % a.q);
        rem /= a.q;
      }
      v.count = counts[key];
      v.expected = expected;
      report.violations.push_back(std::move(v));
    }
    // next combination
    unsigned i = t;
    while (i-- > 0) {
      if (++comb[i] <= a.k - (t - i)) {
        for (unsigned j = i + 1; j < t; ++j) comb[j] = comb[j - 1] + 1;
        break;
      }
      if (i == 0) {
        report.index = report.uniform ? expected : 0;
        return report;
      }
    }
  }
}

}  // namespace

StrengthReport verify_strength_serial(const OrthogonalArray& a, unsigned t) {
  if (t == 0 || t > a.k) throw std::invalid_argument("strength t out of range");
  if (t == 2) return detail::strength2_serial(a);
  return strength_generic(a, t);
}

StrengthReport verify_strength(const OrthogonalArray& a, unsigned t, int threads) {
  if (t == 0 || t > a.k) throw std::invalid_argument("strength t out of range");
  if (t == 2 && threads != 1) return detail::strength2_parallel(a, threads);
  return verify_strength_serial(a, t);
}

ColumnReport column_multiplicities(const OrthogonalArray& a) {
  ColumnReport report;
  std::map<std::vector<std::uint8_t>, std::vector<std::uint64_t>> classes;
  for (std::uint64_t c = 0; c < a.runs; ++c) classes[a.column(c)].push_back(c);
  report.simple = true;
  for (auto& [col, members] : classes) {
    (void)col;
    ++report.multiplicity_histogram[members.size()];
    if (members.size() > 1) {
      report.simple = false;
      report.duplicate_classes.push_back(members);
    }
  }
  return report;
}

VerificationReport verify(const OrthogonalArray& a, unsigned max_t, int threads) {
  VerificationReport report;
  report.columns = column_multiplicities(a);
  bool chain = true;
  for (unsigned t = 1; t <= max_t && t <= a.k; ++t) {
    StrengthReport sr = verify_strength(a, t, threads);
    if (sr.uniform) {
      report.index_at[t] = sr.index;
      if (chain) report.achieved_strength = t;
    } else {
      chain = false;
      report.nonuniform_at.push_back(t);
      report.violations.insert(report.violations.end(), sr.violations.begin(),
                               sr.violations.end());
    }
  }
  return report;
}

void export_oa(const OrthogonalArray& a, std::ostream& out) {
  out << a.runs << ' ' << a.k << ' ' << a.q << ' ' << a.strength << ' ' << a.index
      << '\n';
  for (std::uint64_t c = 0; c < a.runs; ++c) {
    for (unsigned r = 0; r < a.k; ++r) {
      if (r) out << ' ';
      out << unsigned(a.at(r, c));
    }
    out << '\n';
  }
}

void export_oa_file(const OrthogonalArray& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  export_oa(a, out);
  if (!out) throw std::runtime_error("write failure on " + path);
}

OrthogonalArray import_oa(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("missing header line");
  std::istringstream header(line);
  OrthogonalArray a;
  std::uint64_t runs = 0;
  std::int64_t k = 0, q = 0, t = 0, mu = 0;
  if (!(header >> runs >> k >> q >> t >> mu))
    throw std::runtime_error("malformed header: expected 'N k q t mu'");
  std::string extra;
  if (header >> extra) throw std::runtime_error("trailing tokens in header");
  if (k < 1 || q < 2 || q > 255 || t < 0 || mu < 0)
    throw std::runtime_error("header values out of range");
  a.runs = runs;
  a.k = static_cast<unsigned>(k);
  a.q = static_cast<unsigned>(q);
  a.strength = static_cast<unsigned>(t);
  a.index = static_cast<std::uint64_t>(mu);
  a.cells.resize(std::uint64_t(a.k) * a.runs);

  for (std::uint64_t c = 0; c < a.runs; ++c) {
    if (!std::getline(in, line))
      throw std::runtime_error("declared N does not match the number of runs");
    std::istringstream row(line);
    for (unsigned r = 0; r < a.k; ++r) {
      std::int64_t sym = -1;
      if (!(row >> sym)) throw std::runtime_error("ragged run line");
      if (sym < 0 || sym >= q) throw std::runtime_error("symbol out of range");
      a.at(r, c) = static_cast<std::uint8_t>(sym);
    }
    if (row >> extra) throw std::runtime_error("ragged run line");
  }
  while (std::getline(in, line))
    if (!line.empty()) throw std::runtime_error("trailing data after the last run");
  return a;
}

OrthogonalArray import_oa_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return import_oa(in);
}

}  // namespace hermoa
