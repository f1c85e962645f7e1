#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hermoa {

// Index of a field element in lexicographic coefficient order
// (constant coefficient varies fastest), so 0 -> 0 and 1 -> 1.
using Fe = std::uint32_t;

// Kernel T0 of the relative trace plus a transversal C of its additive
// cosets with C[0] = 0. Both lists are in enumeration order.
struct TraceData {
  std::vector<Fe> t0;
  std::vector<Fe> coset_reps;
};

// GF(p^e) realised as GF(p)[x]/(m) where m is the lexicographically
// smallest monic irreducible polynomial of degree e (coefficients
// compared from the constant term upward). For even e the subfield
// GF(q), q = p^{e/2}, is the fixed set of the Frobenius map x -> x^q.
//
// All values are immutable after construction; every operation is a
// pure function, safe for unsynchronized concurrent use.
class Field {
 public:
  static constexpr unsigned kMaxDegree = 8;
  static constexpr std::uint64_t kMaxSize = 1u << 20;

  // Deterministic: the modulus depends only on (p, e).
  static Field make(unsigned p, unsigned e);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint64_t size() const { return size_; }
  // e+1 coefficients, constant term first, leading coefficient 1.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  // p^{e/2}; requires even e.
  unsigned q() const;

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const;
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const;
  Fe inv(Fe a) const;  // throws std::domain_error on 0
  Fe pow(Fe a, std::uint64_t k) const;

  Fe frobenius_q(Fe a) const;  // a^q, involutory; requires even e
  Fe rel_trace(Fe a) const;    // a^q + a, lands in GF(q)
  Fe rel_norm(Fe a) const;     // a^{q+1}, lands in GF(q)
  bool in_subfield_q(Fe a) const;

  // All p^e elements in canonical order; index i is the element i.
  std::vector<Fe> enumerate() const;
  // The q elements of GF(q) inside GF(q^2), ascending.
  std::vector<Fe> subfield_q() const;

  std::vector<unsigned> coeffs(Fe a) const;  // e entries, constant first
  Fe from_coeffs(const std::vector<unsigned>& c) const;
  std::string to_string(Fe a) const;  // e.g. "w+1", "2w^3+1"

  // t0 by filtering the enumeration; coset_reps by a greedy scan that
  // keeps each element whose coset is not yet represented.
  TraceData trace_data() const;

 private:
  Field() = default;
  void check(Fe a) const;
  void require_even(const char* op) const;

  unsigned p_ = 0;
  unsigned e_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t qsub_ = 0;  // p^{e/2} when e even, else 0
  std::vector<unsigned> modulus_;
  // Lookup tables, built when size() is small enough; otherwise the
  // corresponding operations fall back to exponentiation.
  std::vector<Fe> inv_;
  std::vector<Fe> frob_;
};

bool is_prime(unsigned v);
// Decomposes q = p^m with p prime; returns false if q is not a prime power.
bool factor_prime_power(unsigned q, unsigned& p, unsigned& m);

}  // namespace hermoa
