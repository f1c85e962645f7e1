#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hermoa/field.hpp"

using namespace hermoa;

namespace {

// Hand-written GF(4) tables (elements 0, 1, w, w+1), independent of the
// library's polynomial arithmetic.
constexpr int kAdd4[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr int kMul4[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};

// GF(9) as a0 + a1*x with x^2 = -1, element index a0 + 3*a1.
int add9(int a, int b) { return (a % 3 + b % 3) % 3 + 3 * ((a / 3 + b / 3) % 3); }
int mul9(int a, int b) {
  int a0 = a % 3, a1 = a / 3, b0 = b % 3, b1 = b / 3;
  int c0 = ((a0 * b0 - a1 * b1) % 3 + 3) % 3;
  int c1 = (a0 * b1 + a1 * b0) % 3;
  return c0 + 3 * c1;
}

const std::vector<std::pair<unsigned, unsigned>> kTestFields = {
    {2, 2}, {3, 2}, {2, 4}, {5, 2}, {7, 2}, {2, 6}, {3, 4}};  // 4..81 elements

}  // namespace

TEST_CASE("deterministic moduli") {
  CHECK(Field::make(2, 2).modulus() == std::vector<unsigned>{1, 1, 1});  // x^2+x+1
  CHECK(Field::make(3, 2).modulus() == std::vector<unsigned>{1, 0, 1});  // x^2+1
  CHECK(Field::make(2, 1).modulus() == std::vector<unsigned>{0, 1});     // x
  Field f21 = Field::make(2, 1);
  CHECK(f21.size() == 2);
  CHECK(f21.enumerate() == std::vector<Fe>{0, 1});
  CHECK_THROWS_AS(Field::make(4, 2), std::invalid_argument);  // non-prime p
  CHECK_THROWS_AS(Field::make(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 9), std::invalid_argument);
}

TEST_CASE("GF(4) matches the hand table") {
  Field f = Field::make(2, 2);
  for (Fe a = 0; a < 4; ++a)
    for (Fe b = 0; b < 4; ++b) {
      CHECK(f.add(a, b) == Fe(kAdd4[a][b]));
      CHECK(f.mul(a, b) == Fe(kMul4[a][b]));
    }
}

TEST_CASE("GF(9) matches the independent formula") {
  Field f = Field::make(3, 2);
  for (Fe a = 0; a < 9; ++a)
    for (Fe b = 0; b < 9; ++b) {
      CHECK(f.add(a, b) == Fe(add9(a, b)));
      CHECK(f.mul(a, b) == Fe(mul9(a, b)));
    }
}

TEST_CASE("basic operation examples") {
  Field f4 = Field::make(2, 2);
  const Fe w = 2, w1 = 3;
  CHECK(f4.inv(1) == 1);
  CHECK(f4.inv(w) == w1);  // w*(w+1) = 1
  CHECK_THROWS_AS(f4.inv(0), std::domain_error);

  Field f9 = Field::make(3, 2);
  CHECK(f9.pow(3, 8) == 1);  // x-class has multiplicative order dividing 8

  SUBCASE("frobenius") {
    CHECK(f4.frobenius_q(w) == w1);  // w^2 = w+1
    CHECK(f4.frobenius_q(1) == 1);
    for (Fe x = 0; x < 9; ++x) CHECK(f9.frobenius_q(f9.frobenius_q(x)) == x);
  }
  SUBCASE("trace and norm") {
    CHECK(f4.rel_trace(0) == 0);
    CHECK(f4.rel_trace(w) == 1);
    CHECK(f4.rel_trace(1) == 0);
    CHECK(f4.rel_norm(0) == 0);
    CHECK(f4.rel_norm(w) == 1);  // w^3 = 1
    // x^4 = (x^2)^2 = (-1)^2 = 1 under the x^2+1 modulus; cross-checked
    // against the independent GF(9) table.
    CHECK(f9.rel_norm(3) == 1);
    CHECK(mul9(3, mul9(3, mul9(3, 3))) == 1);
  }
  SUBCASE("relative operations reject odd degree") {
    Field f8 = Field::make(2, 3);
    CHECK_THROWS_AS(f8.frobenius_q(1), std::invalid_argument);
    CHECK_THROWS_AS(f8.rel_trace(1), std::invalid_argument);
    CHECK_THROWS_AS(f8.trace_data(), std::invalid_argument);
    CHECK(f8.mul(2, 2) == 4);  // plain arithmetic still works
  }
}

TEST_CASE("enumeration order") {
  Field f4 = Field::make(2, 2);
  CHECK(f4.enumerate() == std::vector<Fe>{0, 1, 2, 3});
  CHECK(f4.coeffs(2) == std::vector<unsigned>{0, 1});  // w
  Field f9 = Field::make(3, 2);
  CHECK(f9.enumerate().size() == 9);
  CHECK(f9.coeffs(0) == std::vector<unsigned>{0, 0});
  CHECK(f9.coeffs(1) == std::vector<unsigned>{1, 0});
  CHECK(f9.coeffs(2) == std::vector<unsigned>{2, 0});
  CHECK(f9.from_coeffs({2, 1}) == 5);
}

TEST_CASE("trace data") {
  Field f4 = Field::make(2, 2);
  TraceData td = f4.trace_data();
  CHECK(td.t0 == std::vector<Fe>{0, 1});
  CHECK(td.coset_reps == std::vector<Fe>{0, 2});  // greedy scan picks w

  Field f9 = Field::make(3, 2);
  TraceData td9 = f9.trace_data();
  CHECK(td9.t0.size() == 3);
  CHECK(td9.coset_reps.size() == 3);
  CHECK(td9.coset_reps[0] == 0);
  // c + t covers the field without repetition
  std::set<Fe> cover;
  for (Fe c : td9.coset_reps)
    for (Fe t : td9.t0) cover.insert(f9.add(c, t));
  CHECK(cover.size() == 9);
}

TEST_CASE("field axioms hold exhaustively") {
  for (auto [p, e] : kTestFields) {
    Field f = Field::make(p, e);
    const Fe sz = static_cast<Fe>(f.size());
    CAPTURE(p);
    CAPTURE(e);
    bool ok = true;
    for (Fe a = 0; a < sz && ok; ++a) {
      if (a != 0 && f.mul(a, f.inv(a)) != 1) ok = false;
      if (f.add(a, f.neg(a)) != 0) ok = false;
      for (Fe b = 0; b < sz && ok; ++b) {
        if (f.add(a, b) != f.add(b, a)) ok = false;
        if (f.mul(a, b) != f.mul(b, a)) ok = false;
        for (Fe c = 0; c < sz; ++c) {
          if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) ok = false;
          if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) ok = false;
          if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) ok = false;
          if (!ok) break;
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("frobenius is an involutory automorphism") {
  for (auto [p, e] : kTestFields) {
    Field f = Field::make(p, e);
    const Fe sz = static_cast<Fe>(f.size());
    bool ok = true;
    for (Fe a = 0; a < sz && ok; ++a) {
      if (f.frobenius_q(f.frobenius_q(a)) != a) ok = false;
      for (Fe b = 0; b < sz; ++b) {
        if (f.frobenius_q(f.add(a, b)) != f.add(f.frobenius_q(a), f.frobenius_q(b)))
          ok = false;
        if (f.frobenius_q(f.mul(a, b)) != f.mul(f.frobenius_q(a), f.frobenius_q(b)))
          ok = false;
        if (!ok) break;
      }
    }
    CAPTURE(p);
    CAPTURE(e);
    CHECK(ok);
  }
}

TEST_CASE("trace is GF(q)-linear and surjective with uniform fibers") {
  for (auto [p, e] : kTestFields) {
    Field f = Field::make(p, e);
    const unsigned q = f.q();
    auto sub = f.subfield_q();
    REQUIRE(sub.size() == q);

    std::map<Fe, std::uint64_t> fiber;
    bool in_sub = true;
    for (Fe a = 0; a < f.size(); ++a) {
      Fe t = f.rel_trace(a);
      if (!f.in_subfield_q(t)) in_sub = false;
      ++fiber[t];
    }
    CHECK(in_sub);
    CHECK(fiber.size() == q);  // surjective onto GF(q)
    for (const auto& [val, cnt] : fiber) {
      (void)val;
      CHECK(cnt == q);
    }

    bool linear = true;
    for (Fe lambda : sub)
      for (Fe a = 0; a < f.size(); ++a) {
        if (f.rel_trace(f.mul(lambda, a)) != f.mul(lambda, f.rel_trace(a))) linear = false;
        if (f.rel_trace(f.add(a, 1)) != f.add(f.rel_trace(a), f.rel_trace(1)))
          linear = false;
      }
    CHECK(linear);
  }
}

TEST_CASE("trace pairing is non-degenerate") {
  for (auto [p, e] : kTestFields) {
    Field f = Field::make(p, e);
    bool ok = true;
    for (Fe x = 1; x < f.size(); ++x) {
      bool witness = false;
      for (Fe alpha = 0; alpha < f.size(); ++alpha)
        if (f.rel_trace(f.mul(alpha, x)) != 0) {
          witness = true;
          break;
        }
      if (!witness) ok = false;
    }
    CAPTURE(p);
    CAPTURE(e);
    CHECK(ok);
  }
}

TEST_CASE("norm maps onto GF(q)* with fibers of size q+1") {
  for (auto [p, e] : kTestFields) {
    Field f = Field::make(p, e);
    const unsigned q = f.q();
    std::map<Fe, std::uint64_t> fiber;
    for (Fe a = 1; a < f.size(); ++a) {
      Fe nm = f.rel_norm(a);
      CHECK(f.in_subfield_q(nm));
      ++fiber[nm];
    }
    CHECK(fiber.size() == q - 1);
    for (const auto& [val, cnt] : fiber) {
      CHECK(val != 0);
      CHECK(cnt == q + 1);
    }
    // multiplicativity, spot-checked across the whole field
    bool mult = true;
    for (Fe a = 0; a < f.size(); ++a)
      for (Fe b = 0; b < f.size(); ++b)
        if (f.rel_norm(f.mul(a, b)) != f.mul(f.rel_norm(a), f.rel_norm(b))) mult = false;
    CHECK(mult);
  }
}

TEST_CASE("prime power factoring") {
  unsigned p = 0, m = 0;
  CHECK(factor_prime_power(8, p, m));
  CHECK(p == 2);
  CHECK(m == 3);
  CHECK(factor_prime_power(7, p, m));
  CHECK(p == 7);
  CHECK(m == 1);
  CHECK_FALSE(factor_prime_power(6, p, m));
  CHECK_FALSE(factor_prime_power(1, p, m));
  CHECK_FALSE(factor_prime_power(12, p, m));
}
