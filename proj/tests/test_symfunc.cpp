#include <qid/polynomial.hpp>
#include <qid/sampler.hpp>
#include <qid/symfunc.hpp>

#include <doctest.h>

#include <algorithm>

#include "support/oracles.hpp"

using namespace qid;

namespace {

VariableSet random_set(SeededSampler& rng, int size, const RangeSpec& r) {
  VariableSet v;
  for (int i = 0; i < size; ++i) v.push_back(rng.sample(r));
  return v;
}

Poly one_minus_factors(const VariableSet& xs) {
  Poly p = Poly::constant(Rational(1));
  for (const Rational& x : xs) p = p * Poly{Rational(1), -x};
  return p;
}

}  // namespace

TEST_SUITE("symfunc") {

TEST_CASE("elementary symmetric basics") {
  const Rational x(7, 3);
  CHECK(elem_sym({x}, 1) == x);
  CHECK(elem_sym({Rational(1), Rational(2)}, 3) == Rational(0));
  CHECK(elem_sym({Rational(1), Rational(2), Rational(3)}, 2) == Rational(11));
  CHECK(elem_sym({}, 0) == Rational(1));
  CHECK(elem_sym({Rational(5)}, -1) == Rational(0));
}

TEST_CASE("complete symmetric basics") {
  const Rational x(5, 2);
  CHECK(complete_sym({x}, 0) == Rational(1));
  for (int k = 1; k <= 5; ++k) CHECK(complete_sym({x}, k) == pow(x, k));
  CHECK(complete_sym({Rational(1), Rational(2)}, 2) == Rational(7));
  CHECK(complete_sym({}, 3) == Rational(0));
}

TEST_CASE("supersymmetric complete basics") {
  CHECK(supersym_complete({Rational(1)}, {Rational(2)}, 0) == Rational(1));
  CHECK(supersym_complete({Rational(2)}, {Rational(1), Rational(3)}, 2) == Rational(-1));
  VariableSet x{Rational(2, 3), Rational(-1), Rational(4)};
  for (int i = 1; i <= 5; ++i) CHECK(supersym_complete(x, x, i) == Rational(0));
}

TEST_CASE("enumeration oracles agree") {
  SeededSampler rng(21);
  RangeSpec r{-6, 6, 1, 3};
  for (int t = 0; t < 10; ++t) {
    const VariableSet x = random_set(rng, 5, r);
    for (int i = 0; i <= 6; ++i) {
      CHECK(elem_sym(x, i) == oracle::elem_enumerate(x, i));
      CHECK(complete_sym(x, i) == oracle::complete_enumerate(x, i));
    }
  }
}

TEST_CASE("order of elements never matters") {
  SeededSampler rng(22);
  RangeSpec r{-9, 9, 1, 4};
  for (int t = 0; t < 10; ++t) {
    VariableSet x = random_set(rng, 4, r), y = random_set(rng, 3, r);
    VariableSet xs = x, ys = y;
    std::reverse(xs.begin(), xs.end());
    std::rotate(ys.begin(), ys.begin() + 1, ys.end());
    for (int i = 0; i <= 5; ++i) {
      CHECK(elem_sym(x, i) == elem_sym(xs, i));
      CHECK(complete_sym(x, i) == complete_sym(xs, i));
      CHECK(supersym_complete(x, y, i) == supersym_complete(xs, ys, i));
    }
  }
}

TEST_CASE("generating function: series division to order 8") {
  SeededSampler rng(23);
  RangeSpec r{-5, 5, 1, 3};
  const int N = 8;
  for (int t = 0; t < 15; ++t) {
    const VariableSet x = random_set(rng, static_cast<int>(rng.next_below(5)), r);
    const VariableSet y = random_set(rng, static_cast<int>(rng.next_below(5)), r);
    const auto series = oracle::series_quotient(one_minus_factors(y), one_minus_factors(x), N);
    Rational at_t(0), pw(1);
    const Rational tval = rng.sample(r);
    Rational expect_at_t(0);
    for (int i = 0; i <= N; ++i) {
      const Rational hi = supersym_complete(x, y, i);
      CHECK(hi == series[static_cast<std::size_t>(i)]);
      at_t += hi * pw;
      expect_at_t += series[static_cast<std::size_t>(i)] * pw;
      pw *= tval;
    }
    CHECK(at_t == expect_at_t);
  }
}

}  // TEST_SUITE
