#include "hermoa/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace hermoa {
namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<unsigned>;

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  const std::size_t deg_m = m.size() - 1;
  for (std::size_t i = a.size(); i-- > deg_m;) {
    unsigned c = a[i];
    if (c == 0) continue;
    a[i] = 0;
    for (std::size_t j = 0; j < deg_m; ++j)
      a[i - deg_m + j] = (a[i - deg_m + j] + c * (p - m[j])) % p;
  }
  a.resize(deg_m, 0);
  return a;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](unsigned c) { return c == 0; });
}

// Trial division against all monic polynomials of degree <= deg(f)/2.
bool poly_irreducible(const Poly& f, unsigned p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly div(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      div[d] = 1;
      if (poly_is_zero(poly_mod(f, div, p))) return false;
    }
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace

bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool factor_prime_power(unsigned q, unsigned& p, unsigned& m) {
  if (q < 2) return false;
  unsigned d = 2;
  while (d * d <= q && q % d != 0) ++d;
  p = (d * d <= q) ? d : q;
  m = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  return r == 1;
}

Field Field::make(unsigned p, unsigned e) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (e < 1 || e > kMaxDegree) throw std::invalid_argument("extension degree out of range");
  std::uint64_t size = ipow(p, e);
  if (size > kMaxSize) throw std::invalid_argument("field too large");

  Field f;
  f.p_ = p;
  f.e_ = e;
  f.size_ = size;
  f.qsub_ = (e % 2 == 0) ? ipow(p, e / 2) : 0;

  // Scan lower coefficients in lexicographic order, constant term fastest.
  for (std::uint64_t idx = 0;; ++idx) {
    Poly m(e + 1, 0);
    std::uint64_t v = idx;
    for (unsigned i = 0; i < e; ++i) {
      m[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    m[e] = 1;
    if (poly_irreducible(m, p)) {
      f.modulus_ = m;
      break;
    }
  }

  if (size <= kTableLimit) {
    f.inv_.assign(size, 0);
    for (Fe x = 1; x < size; ++x) f.inv_[x] = f.pow(x, size - 2);
    if (e % 2 == 0) {
      f.frob_.assign(size, 0);
      for (Fe x = 0; x < size; ++x) f.frob_[x] = f.pow(x, f.qsub_);
    }
  }
  return f;
}

void Field::check(Fe a) const {
  if (a >= size_) throw std::invalid_argument("element index out of range for this field");
}

void Field::require_even(const char* op) const {
  if (e_ % 2 != 0)
    throw std::invalid_argument(std::string(op) + " requires an even extension degree");
}

unsigned Field::q() const {
  require_even("q()");
  return static_cast<unsigned>(qsub_);
}

Fe Field::add(Fe a, Fe b) const {
  check(a);
  check(b);
  Fe r = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    unsigned da = (a / place) % p_;
    unsigned db = (b / place) % p_;
    r += static_cast<Fe>(((da + db) % p_) * place);
    place *= p_;
  }
  return r;
}

Fe Field::neg(Fe a) const {
  check(a);
  Fe r = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    unsigned da = (a / place) % p_;
    r += static_cast<Fe>(((p_ - da) % p_) * place);
    place *= p_;
  }
  return r;
}

Fe Field::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Field::mul(Fe a, Fe b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  Poly pa = coeffs(a), pb = coeffs(b);
  return from_coeffs(poly_mod(poly_mul(pa, pb, p_), modulus_, p_));
}

Fe Field::pow(Fe a, std::uint64_t k) const {
  check(a);
  Fe r = 1, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

Fe Field::inv(Fe a) const {
  check(a);
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_.empty() ? pow(a, size_ - 2) : inv_[a];
}

Fe Field::frobenius_q(Fe a) const {
  require_even("frobenius_q");
  check(a);
  return frob_.empty() ? pow(a, qsub_) : frob_[a];
}

Fe Field::rel_trace(Fe a) const { return add(frobenius_q(a), a); }

Fe Field::rel_norm(Fe a) const { return mul(frobenius_q(a), a); }

bool Field::in_subfield_q(Fe a) const { return frobenius_q(a) == a; }

std::vector<Fe> Field::enumerate() const {
  std::vector<Fe> all(size_);
  for (std::uint64_t i = 0; i < size_; ++i) all[i] = static_cast<Fe>(i);
  return all;
}

std::vector<Fe> Field::subfield_q() const {
  require_even("subfield_q");
  std::vector<Fe> sub;
  sub.reserve(qsub_);
  for (Fe x = 0; x < size_; ++x)
    if (in_subfield_q(x)) sub.push_back(x);
  return sub;
}

std::vector<unsigned> Field::coeffs(Fe a) const {
  check(a);
  std::vector<unsigned> c(e_);
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Fe Field::from_coeffs(const std::vector<unsigned>& c) const {
  if (c.size() != e_) throw std::invalid_argument("coefficient vector length mismatch");
  Fe a = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
    a += static_cast<Fe>(c[i] * place);
    place *= p_;
  }
  return a;
}

std::string Field::to_string(Fe a) const {
  auto c = coeffs(a);
  std::string s;
  for (unsigned i = e_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
    } else {
      if (c[i] != 1) s += std::to_string(c[i]);
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

TraceData Field::trace_data() const {
  require_even("trace_data");
  TraceData td;
  for (Fe x = 0; x < size_; ++x)
    if (rel_trace(x) == 0) td.t0.push_back(x);
  for (Fe x = 0; x < size_; ++x) {
    bool seen = false;
    for (Fe c : td.coset_reps) {
      if (rel_trace(sub(x, c)) == 0) {  // same coset of T0
        seen = true;
        break;
      }
    }
    if (!seen) td.coset_reps.push_back(x);
  }
  return td;
}

}  // namespace hermoa
