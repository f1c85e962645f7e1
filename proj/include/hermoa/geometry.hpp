#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hermoa/field.hpp"

namespace hermoa {

// Element of the translation-like collineation group, given by the row
// entries i_1..i_n and the column entries j_1..j_{n-1} of its matrix.
struct GroupElement {
  std::vector<Fe> i;  // n entries
  std::vector<Fe> j;  // n-1 entries
};

// Reduced data of a translated Hermitian form on the affine chart:
// two group elements with equal (a, c) induce the same form there.
struct TranslatedForm {
  std::vector<Fe> a;  // n-1 entries
  Fe c = 0;           // lies in GF(q)
};

// Affine Hermitian cone with vertex on the axis direction: the pair of
// a nonzero base direction vector (normalized up to GF(q)* scaling)
// and a shift v in T0.
struct ConeSpec {
  std::vector<Fe> omega;  // n-1 entries, not all zero
  Fe v = 0;
};

struct VarietyCensus {
  std::uint64_t total_points = 0;
  std::uint64_t affine_points = 0;
  // |line ∩ variety| -> number of lines, over all projective lines
  // (exhaustive below the sample cap, else lines through sampled points).
  std::map<std::uint64_t, std::uint64_t> line_meet_histogram;
  bool exhaustive_lines = true;

  bool meets_allowed(unsigned q) const;
};

// Lexicographic odometer over tuples with entries in [0, radix);
// the last coordinate varies fastest. Returns false after wrapping.
bool next_tuple(std::vector<Fe>& t, std::uint64_t radix);

// Geometry of the canonical non-degenerate Hermitian variety in
// dimension n over GF(q^2), together with the group data feeding the
// array and design constructions. Pure functions over immutable state.
class HermitianGeometry {
 public:
  HermitianGeometry(const Field& field, unsigned n);

  const Field& field() const { return *field_; }
  unsigned n() const { return n_; }
  unsigned q() const { return q_; }
  const TraceData& traces() const { return traces_; }
  const std::vector<Fe>& subfield() const { return subfield_; }
  // Fixed primitive element used by the coordinate-splitting map:
  // the first generator of the multiplicative group in enumeration order.
  Fe epsilon() const { return eps_; }

  // Position of a GF(q)-element in the ascending subfield list.
  unsigned symbol_of(Fe x) const;

  // Canonical form on the affine chart: sum of norms of the first n-1
  // coordinates plus the trace of the last one. Lands in GF(q).
  Fe eval_canonical(std::span<const Fe> x) const;

  // Translated form: canonical value + tr(sum x_t a_t) + c.
  Fe eval_translated(const TranslatedForm& f, std::span<const Fe> x) const;

  TranslatedForm reduce(const GroupElement& g) const;

  // The unique element of C solving tr(c) = -(sum of prefix norms).
  Fe solve_special_coordinate(std::span<const Fe> prefix) const;

  // The q^{2n-2} pairwise distinct translated forms indexed by prefix
  // tuples in lexicographic order; entry 0 is the identity form.
  std::vector<TranslatedForm> enumerate_representatives() const;

  // sum_t (omega_t^q x_t^q - omega_t x_t); always lands in T0 and does
  // not depend on the last coordinate of x.
  Fe cone_value(std::span<const Fe> omega, std::span<const Fe> x) const;

  // Lexicographically smallest vector among {lambda*omega : lambda in GF(q)*}.
  std::vector<Fe> normalize_omega(std::span<const Fe> omega) const;

  // All normalized cone specs: one omega per scalar class, v over T0.
  std::vector<ConeSpec> enumerate_cones() const;

  // Coordinate split over the basis {1, epsilon}: n-1 coordinates of
  // GF(q^2) become 2(n-1) coordinates of GF(q).
  std::vector<Fe> theta(std::span<const Fe> x) const;
  std::vector<Fe> theta_inv(std::span<const Fe> y) const;

  // Exhaustive enumeration of the canonical variety in the projective
  // space: point counts plus line-intersection sizes.
  VarietyCensus variety_census(std::uint64_t line_sample_cap = 50) const;

 private:
  const Field* field_;
  unsigned n_;
  unsigned q_;
  TraceData traces_;
  std::vector<Fe> subfield_;
  Fe eps_;
  std::vector<std::pair<Fe, Fe>> split_;  // element -> (a1, a2) with a = a1 + eps*a2
};

}  // namespace hermoa
