#include <qid/sampler.hpp>

#include <doctest.h>

using namespace qid;

TEST_SUITE("sampler") {

TEST_CASE("identical seed replays the identical sequence") {
  SeededSampler a(7), b(7);
  RangeSpec r{1, 10, 1, 10};
  for (int i = 0; i < 100; ++i) CHECK(a.sample(r) == b.sample(r));
  CHECK(a.position() == b.position());
}

TEST_CASE("different seeds diverge") {
  SeededSampler a(7), b(8);
  bool differed = false;
  RangeSpec r{1, 1000000, 1, 1000000};
  for (int i = 0; i < 10; ++i) differed |= a.sample(r) != b.sample(r);
  CHECK(differed);
}

TEST_CASE("draws respect the range spec") {
  SeededSampler rng(7);
  RangeSpec r{1, 10, 1, 10};
  for (int i = 0; i < 500; ++i) {
    const Rational v = rng.sample(r);
    CHECK(v >= Rational(1, 10));
    CHECK(v <= Rational(10));
    CHECK(v.den() >= 1);
  }
}

TEST_CASE("nonzero sampling never returns zero") {
  SeededSampler rng(13);
  RangeSpec r{-2, 2, 1, 3};
  for (int i = 0; i < 200; ++i) CHECK(!rng.sample_nonzero(r).is_zero());
  CHECK_THROWS_AS(rng.sample_nonzero(RangeSpec{0, 0, 1, 1}), Error);
}

TEST_CASE("splitmix output is platform-pinned") {
  // Reference values of the splitmix64 output function.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
}

TEST_CASE("derived cell seeds are stable and spread") {
  const std::uint64_t s = derive_seed(0, "kara", 2, 5);
  CHECK(s == derive_seed(0, "kara", 2, 5));
  CHECK(derive_seed(0, "kara", 2, 5) != derive_seed(0, "kara", 2, 6));
  CHECK(derive_seed(0, "kara", 2, 5) != derive_seed(0, "kara", 3, 5));
  CHECK(derive_seed(0, "kara", 2, 5) != derive_seed(0, "krattenthaler", 2, 5));
  CHECK((derive_seed(42, "kara", 2, 5) ^ derive_seed(0, "kara", 2, 5)) == 42ULL);
}

TEST_CASE("first draws for a pinned seed are frozen") {
  SeededSampler rng(7);
  RangeSpec r{1, 10, 1, 10};
  // Regression pins: these concrete values must never drift across
  // platforms or refactors.
  CHECK(rng.sample(r).str() == "5/7");
  CHECK(rng.sample(r).str() == "4/5");
  CHECK(rng.sample(r).str() == "2/3");
  SeededSampler replay(7);
  CHECK(replay.sample(r).str() == "5/7");
}

}  // TEST_SUITE
