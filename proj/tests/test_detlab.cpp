#include <qid/detlab.hpp>
#include <qid/interp.hpp>
#include <qid/sampler.hpp>

#include <doctest.h>

#include <vector>

#include "support/oracles.hpp"

using namespace qid;

namespace {

const RangeSpec kR{-9, 9, 1, 4};

ExactMatrix random_matrix(SeededSampler& rng, int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.sample(kR);
  return m;
}

Rational sample_q(SeededSampler& rng) {
  while (true) {
    const Rational q(rng.next_in(-9, 9), rng.next_in(1, 4));
    if (!q.is_zero() && q != Rational(1) && q != Rational(-1)) return q;
  }
}

}  // namespace

TEST_SUITE("detlab") {

TEST_CASE("determinant basics") {
  ExactMatrix id3 = ExactMatrix::Identity(3, 3);
  CHECK(det_exact(id3) == Rational(1));
  ExactMatrix m(2, 2);
  m(0, 0) = Rational(1);
  m(0, 1) = Rational(2);
  m(1, 0) = Rational(3);
  m(1, 1) = Rational(4);
  CHECK(det_exact(m) == Rational(-2));
  CHECK(det_exact(m, DetBackend::fraction_free) == Rational(-2));
  ExactMatrix rect(2, 3);
  CHECK_THROWS_AS(det_exact(rect), Error);
}

TEST_CASE("random 5x5 matches the cofactor oracle") {
  SeededSampler rng(61);
  for (int t = 0; t < 5; ++t) {
    const ExactMatrix m = random_matrix(rng, 5);
    const Rational expect = oracle::det_cofactor(m);
    CHECK(det_exact(m) == expect);
    CHECK(det_exact(m, DetBackend::fraction_free) == expect);
  }
}

TEST_CASE("multilinearity spot checks") {
  SeededSampler rng(62);
  ExactMatrix m = random_matrix(rng, 4);
  const Rational d = det_exact(m);
  SUBCASE("scaling one row scales the determinant") {
    const Rational s(7, 3);
    ExactMatrix scaled = m;
    for (int j = 0; j < 4; ++j) scaled(2, j) = s * scaled(2, j);
    CHECK(det_exact(scaled) == s * d);
  }
  SUBCASE("swapping rows flips the sign") {
    ExactMatrix swapped = m;
    swapped.row(0).swap(swapped.row(3));
    CHECK(det_exact(swapped) == -d);
  }
  SUBCASE("duplicate rows vanish") {
    ExactMatrix dup = m;
    dup.row(1) = dup.row(2);
    CHECK(det_exact(dup) == Rational(0));
    CHECK(det_exact(dup, DetBackend::fraction_free) == Rational(0));
  }
}

TEST_CASE("fraction-free path agrees with rational elimination") {
  SeededSampler rng(63);
  int done = 0;
  while (done < 50) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    ExactMatrix m = random_matrix(rng, n);
    if (done % 5 == 0 && n >= 2) m.row(0) = m.row(n - 1);  // exercise singular cases
    CHECK(det_exact(m) == det_exact(m, DetBackend::fraction_free));
    ++done;
  }
}

TEST_CASE("pinned determinant identity instance") {
  // n = 1, (a,b,c) = (5,7,11), x = (2,3): both sides equal -48/7.
  // Direct 2x2 expansion: (x1-a)(x1-c/a)(x2-b)(x2-c/b) - (x2-a)(x2-c/a)(x1-b)(x1-c/b).
  const Rational a(5), b(7), c(11);
  const std::vector<Rational> x{Rational(2), Rational(3)};
  const Rational direct = (x[0] - a) * (x[0] - c / a) * (x[1] - b) * (x[1] - c / b) -
                          (x[1] - a) * (x[1] - c / a) * (x[0] - b) * (x[0] - c / b);
  CHECK(direct == Rational(-48, 7));
  const Sides s = kara_sides(1, a, b, c, Rational(2), x);
  CHECK(s.lhs == Rational(-48, 7));
  CHECK(s.rhs == Rational(-48, 7));
}

TEST_CASE("determinant identity vanishes at degenerate points") {
  const Rational a(5), b(7), c(11), q(3);
  SUBCASE("repeated point") {
    const std::vector<Rational> x{Rational(2), Rational(2)};
    const Sides s = kara_sides(1, a, b, c, q, x);
    CHECK(s.lhs == Rational(0));
    CHECK(s.rhs == Rational(0));
  }
  SUBCASE("x1 x2 = c") {
    const std::vector<Rational> x{Rational(2), Rational(11, 2)};
    const Sides s = kara_sides(1, a, b, c, q, x);
    CHECK(s.lhs == Rational(0));
    CHECK(s.rhs == Rational(0));
  }
}

TEST_CASE("determinant identity at random parameters, n <= 4") {
  SeededSampler rng(64);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 3; ++t) {
      const Rational a = rng.sample_nonzero(kR), b = rng.sample_nonzero(kR);
      const Rational c = rng.sample(kR), q = sample_q(rng);
      std::vector<Rational> x;
      for (int i = 0; i <= n; ++i) x.push_back(rng.sample(kR));
      const Sides s = kara_sides(n, a, b, c, q, x);
      CHECK(s.equal());
      const Sides ff = kara_sides(n, a, b, c, q, x, DetBackend::fraction_free);
      CHECK(ff.equal());
      CHECK(ff.lhs == s.lhs);
    }
  }
}

TEST_CASE("krattenthaler identity") {
  SUBCASE("n = 1 collapses to (1, 1)") {
    const std::vector<Rational> x{Rational(3, 2)};
    const Sides s = kratt_sides(1, Rational(2), Rational(3), Rational(5), Rational(7), x);
    CHECK(s.lhs == Rational(1));
    CHECK(s.rhs == Rational(1));
  }
  SUBCASE("equal points collapse both sides to zero") {
    const std::vector<Rational> x{Rational(3), Rational(3)};
    const Sides s = kratt_sides(2, Rational(2), Rational(3), Rational(5), Rational(7), x);
    CHECK(s.lhs == Rational(0));
    CHECK(s.rhs == Rational(0));
  }
  SUBCASE("random parameters, n <= 5") {
    SeededSampler rng(65);
    for (int n = 1; n <= 5; ++n) {
      int done = 0;
      while (done < 3) {
        const Rational a = rng.sample_nonzero(kR), b = rng.sample_nonzero(kR);
        const Rational c = rng.sample_nonzero(kR), q = sample_q(rng);
        std::vector<Rational> x;
        for (int i = 0; i < n; ++i) x.push_back(rng.sample_nonzero(kR));
        Sides s;
        try {
          s = kratt_sides(n, a, b, c, q, x);
        } catch (const Error& e) {
          if (e.code() != errc::degenerate_parameters) throw;
          continue;
        }
        CHECK(s.equal());
        ++done;
      }
    }
  }
}

TEST_CASE("variable sets for the cofactor determinants") {
  const Rational a(5), b(7), c(11), q(2);
  SUBCASE("cardinality is always 2n") {
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= n + 1; ++k)
        for (int j = 1; j <= n; ++j)
          CHECK(build_yjk(n, k, j, a, b, c, q).size() == 2 * static_cast<std::size_t>(n));
  }
  SUBCASE("n = 1: the deleted column flips the branch") {
    const VariableSet y11 = build_yjk(1, 1, 1, a, b, c, q);
    REQUIRE(y11.size() == 2);
    CHECK(y11[0] == b);
    CHECK(y11[1] == c / b);
    const VariableSet y12 = build_yjk(1, 2, 1, a, b, c, q);
    CHECK(y12[0] == a);
    CHECK(y12[1] == c / a);
  }
  SUBCASE("branch pair counts at n = 2") {
    for (int k = 1; k <= 3; ++k)
      for (int j = 1; j <= 2; ++j) {
        const VariableSet y = build_yjk(2, k, j, a, b, c, q);
        int a_side = 0, b_side = 0;
        for (const Rational& v : y) {
          bool is_a = false, is_b = false;
          for (int t = 0; t <= 2; ++t) {
            if (v == a * pow(q, -t) || v == c * pow(q, t) / a) is_a = true;
            if (v == b * pow(q, 1 - 2 + t) || v == c * pow(q, 2 - 1 - t) / b) is_b = true;
          }
          a_side += is_a;
          b_side += is_b;
        }
        const int expect_a = j < k ? 2 - j + 1 : 2 - j;
        const int expect_b = j < k ? j - 1 : j;
        CHECK(a_side == 2 * expect_a);
        CHECK(b_side == 2 * expect_b);
      }
  }
}

TEST_CASE("cofactor determinant equals its closed form") {
  SUBCASE("n = 1, k = 1 pins the sign to +(b-u)(u-c/b)") {
    SeededSampler rng(66);
    for (int t = 0; t < 5; ++t) {
      const Rational u = rng.sample_nonzero(kR), a = rng.sample_nonzero(kR),
                     b = rng.sample_nonzero(kR), c = rng.sample_nonzero(kR);
      const Rational q = sample_q(rng);
      CHECK(fnk_det(1, 1, u, a, b, c, q) == (b - u) * (u - c / b));
      CHECK(fnk_closed(1, 1, u, a, b, c, q) == (b - u) * (u - c / b));
    }
  }
  SUBCASE("n <= 4, all k, random parameters, both backends") {
    SeededSampler rng(67);
    for (int n = 1; n <= 4; ++n) {
      for (int t = 0; t < 2; ++t) {
        const Rational u = rng.sample_nonzero(kR), a = rng.sample_nonzero(kR),
                       b = rng.sample_nonzero(kR), c = rng.sample_nonzero(kR);
        const Rational q = sample_q(rng);
        for (int k = 1; k <= n + 1; ++k) {
          const Rational closed = fnk_closed(n, k, u, a, b, c, q);
          CHECK(fnk_det(n, k, u, a, b, c, q) == closed);
          CHECK(fnk_det(n, k, u, a, b, c, q, DetBackend::fraction_free) == closed);
        }
      }
    }
  }
}

TEST_CASE("root structure of the cofactor determinants, n <= 3") {
  const Rational a(5), b(7), c(11), q(2);
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n + 1; ++k) {
      for (int i = 1; i <= k - 1; ++i) {
        CHECK(fnk_closed(n, k, a * pow(q, i - n), a, b, c, q).is_zero());
        CHECK(fnk_det(n, k, a * pow(q, i - n), a, b, c, q).is_zero());
        CHECK(fnk_closed(n, k, c * pow(q, 1 - i) / a, a, b, c, q).is_zero());
        CHECK(fnk_det(n, k, c * pow(q, 1 - i) / a, a, b, c, q).is_zero());
      }
      for (int i = 1; i <= n - k + 1; ++i) {
        CHECK(fnk_closed(n, k, b * pow(q, 2 - n - i), a, b, c, q).is_zero());
        CHECK(fnk_det(n, k, b * pow(q, 2 - n - i), a, b, c, q).is_zero());
        CHECK(fnk_closed(n, k, c * pow(q, i - 1) / b, a, b, c, q).is_zero());
        CHECK(fnk_det(n, k, c * pow(q, i - 1) / b, a, b, c, q).is_zero());
      }
      // u with u^2 q^{i+j-2} = c: build c from u instead
      const Rational u(3, 2);
      const Rational c2 = u * u * q;  // (i,j) = (1,2)
      CHECK(fnk_closed(n, k, u, a, b, c2, q).is_zero());
      CHECK(fnk_det(n, k, u, a, b, c2, q).is_zero());
    }
}

TEST_CASE("elementary-symmetric determinant lemma") {
  SUBCASE("n = 1 gives c for both deleted columns") {
    const Rational a(5), b(7), c(11), q(2);
    for (int k = 1; k <= 2; ++k) {
      const Sides s = lemma33_sides(1, k, a, b, c, q);
      CHECK(s.lhs == c);
      CHECK(s.rhs == c);
    }
  }
  SUBCASE("top elementary function of every Y set is c^n") {
    SeededSampler rng(68);
    for (int n = 1; n <= 3; ++n) {
      const Rational a = rng.sample_nonzero(kR), b = rng.sample_nonzero(kR),
                     c = rng.sample_nonzero(kR);
      const Rational q = sample_q(rng);
      for (int k = 1; k <= n + 1; ++k)
        for (int j = 1; j <= n; ++j)
          CHECK(elem_sym(build_yjk(n, k, j, a, b, c, q), 2 * n) == pow(c, n));
    }
  }
  SUBCASE("closed form, n <= 4, all k") {
    SeededSampler rng(69);
    for (int n = 1; n <= 4; ++n) {
      for (int t = 0; t < 2; ++t) {
        const Rational a = rng.sample_nonzero(kR), b = rng.sample_nonzero(kR),
                       c = rng.sample_nonzero(kR);
        const Rational q = sample_q(rng);
        for (int k = 1; k <= n + 1; ++k) CHECK(lemma33_sides(n, k, a, b, c, q).equal());
      }
    }
  }
}

TEST_CASE("last-row cofactor expansion") {
  SUBCASE("random instances, n <= 3") {
    SeededSampler rng(70);
    for (int n = 1; n <= 3; ++n) {
      int done = 0;
      while (done < 2) {
        const Rational u = rng.sample_nonzero(kR), a = rng.sample_nonzero(kR),
                       b = rng.sample_nonzero(kR), c = rng.sample_nonzero(kR);
        const Rational q = sample_q(rng);
        const Rational y = rng.sample(kR);
        if (!GeometricGrid{u, q, n}.admissible()) continue;
        const CofactorCheck cc = cofactor_expansion_check(n, u, a, b, c, q, y);
        CHECK(cc.lhs == cc.rhs);
        CHECK(cc.per_k_match);
        CHECK(cc.pass());
        REQUIRE(cc.cofactors.size() == static_cast<std::size_t>(n) + 1);
        for (const auto& [expansion, brute] : cc.cofactors) CHECK(expansion == brute);
        ++done;
      }
    }
  }
  SUBCASE("y on the grid kills both sides") {
    const CofactorCheck cc = cofactor_expansion_check(2, Rational(3, 2), Rational(5),
                                                      Rational(7), Rational(11), Rational(2),
                                                      Rational(3));  // y = u q
    CHECK(cc.lhs == Rational(0));
    CHECK(cc.rhs == Rational(0));
    CHECK(cc.per_k_match);
  }
  SUBCASE("degenerate grid is rejected") {
    CHECK_THROWS_AS(cofactor_expansion_check(2, Rational(0), Rational(5), Rational(7),
                                             Rational(11), Rational(2), Rational(3)),
                    Error);
    CHECK_THROWS_AS(cofactor_expansion_check(2, Rational(3), Rational(5), Rational(7),
                                             Rational(11), Rational(1), Rational(3)),
                    Error);
  }
}

TEST_CASE("normalizing the expansion reproduces the geometric summation terms") {
  SeededSampler rng(71);
  for (int n = 1; n <= 3; ++n) {
    int done = 0;
    while (done < 2) {
      const Rational u = rng.sample_nonzero(kR), a = rng.sample_nonzero(kR),
                     b = rng.sample_nonzero(kR), c = rng.sample_nonzero(kR);
      const Rational q = sample_q(rng);
      const Rational y = rng.sample(kR);
      const GeometricSpec spec{a, b, c, q, u, n};
      if (!GeometricGrid{u, q, n}.admissible() || !spec.nodes_admissible()) continue;
      const std::vector<Rational> x = GeometricGrid{u, q, n}.points();
      Rational vand(1), cprod(1);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          vand *= x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
          cprod *= c - u * u * pow(q, i + j);
        }
      const long long e3 = static_cast<long long>(n + 1) * n * (n - 1);
      Rational divisor = vand * cprod * pow(b, choose2(n + 1)) * pow(q, -(e3 / 3));
      for (int i = 1; i <= n + 1; ++i)
        divisor *= q_pochhammer(a / b, q, i - 1) *
                   q_pochhammer(c * pow(q, 2 * n + 2 - 2 * i) / (a * b), q, i - 1);
      if (divisor.is_zero()) continue;
      bool all = true;
      for (int k = 1; k <= n + 1; ++k) {
        const Rational term =
            vand * fnk_det(n, k, u, a, b, c, q) *
            (cauchy_poly(y, a * pow(q, k - n), q, n - k + 1) *
             cauchy_poly(y, c / a, q, n - k + 1) *
             cauchy_poly(y, b * pow(q, 1 - n), q, k - 1) *
             cauchy_poly(y, c * pow(q, n - k + 1) / b, q, k - 1)) /
            divisor;
        const Rational expect = jackson_corollary_coefficient(spec, k - 1) *
                                jackson_corollary_ypart(spec, k - 1, y);
        if (term != expect) all = false;
      }
      CHECK(all);
      ++done;
    }
  }
}

}  // TEST_SUITE
