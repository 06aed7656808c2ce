#include "doctest.h"

#include <cmath>
#include <random>

#include "aitlab/interval_set.hpp"
#include "aitlab/measure.hpp"

using namespace aitlab;

namespace {
Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(rng() & 1U);
  return b;
}
}  // namespace

TEST_CASE("approximation examples") {
  const auto u = MeasureOracle::uniform();
  CHECK(u.approx(Bits("01"), 5) == Dyadic(1, 2));
  const auto third = MeasureOracle::bernoulli(Rational(1, 3));
  CHECK(third.approx(Bits("1"), 8) == Dyadic(86, 8));
  const auto half = MeasureOracle::bernoulli(Rational(1, 2));
  for (const Bits& x : strings_up_to(6)) CHECK(half.measure(x) == u.measure(x));
}

TEST_CASE("oracle invariants") {
  const std::vector<MeasureOracle> oracles{
      MeasureOracle::uniform(), MeasureOracle::bernoulli(Rational(1, 3)),
      MeasureOracle::parse("markov 2 [[7/10,3/10],[2/5,3/5]] [1/2,1/2]"),
      MeasureOracle::parse("finite 1:1/2 011:1/4 -:1/4")};
  for (const auto& q : oracles) {
    for (const Bits& x : strings_up_to(8)) {
      Bits x0 = x, x1 = x;
      x0.push_back(false);
      x1.push_back(true);
      REQUIRE(q.measure(x) == q.measure(x0) + q.measure(x1));
      for (std::uint64_t n : {1, 7, 20}) {
        const Dyadic a = q.approx(x, n);
        REQUIRE(compare(a, q.measure(x)) >= 0);
        REQUIRE(compare(a - Dyadic::inverse_pow2(n), q.measure(x)) < 0);
      }
      CdfCursor c(q);
      for (std::size_t i = 0; i < x.size(); ++i) c.push(x[i]);
      REQUIRE(c.current().width_value() == q.measure(x));
    }
  }
}

TEST_CASE("measure specification parsing") {
  CHECK(MeasureOracle::parse("bernoulli 1/3").describe() == "bernoulli 1/3");
  CHECK(MeasureOracle::parse("  uniform ").kind() == MeasureOracle::Kind::Uniform);
  CHECK_THROWS_AS(MeasureOracle::parse("bernoulli 5/3"), std::invalid_argument);
  CHECK_THROWS_AS(MeasureOracle::parse("markov 2 [[1/2,1/3],[1/2,1/2]] [1/2,1/2]"),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasureOracle::parse("gaussian 0 1"), std::invalid_argument);
  CHECK(parse_rational("0.25") == Rational(1, 4));
}

TEST_CASE("interval sets") {
  IntervalSet s;
  s.insert(cylinder_interval(Bits("00")));
  s.insert(cylinder_interval(Bits("01")));
  CHECK(s.parts().size() == 1);
  CHECK(s.measure() == Dyadic(1, 1));
  s.insert(cylinder_interval(Bits("11")));
  CHECK(s.parts().size() == 2);
  CHECK(s.contains(cylinder_interval(Bits("010"))));
  CHECK_FALSE(s.contains(cylinder_interval(Bits("1"))));
  CHECK(s.intersects(cylinder_interval(Bits("1"))));
}

TEST_CASE("uniform sampler is the identity") {
  const auto u = MeasureOracle::uniform();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Bits a = random_bits(rng, 20);
    const SampleResult r = sample_fast(u, a, 20, 20);
    REQUIRE(r.output == a);
  }
}

TEST_CASE("literal and fast samplers agree on their common domain") {
  const std::vector<MeasureOracle> oracles{
      MeasureOracle::uniform(), MeasureOracle::bernoulli(Rational(1, 3)),
      MeasureOracle::parse("markov 2 [[7/10,3/10],[2/5,3/5]] [1/2,1/2]")};
  std::mt19937_64 rng(5);
  for (const auto& q : oracles) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng() % 10;
      const Bits a = random_bits(rng, n);
      const Bits lit = sample_literal(q, a, n);
      const Bits fast = sample_fast(q, a, n, n).output;
      REQUIRE(lit.size() <= fast.size());
      REQUIRE(fast.prefix(lit.size()) == lit);
    }
  }
}

TEST_CASE("degenerate measure forces its prefix") {
  const auto q = MeasureOracle::parse("finite 1:1");
  CHECK(sample_literal(q, Bits("000000"), 6).empty());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Bits a = random_bits(rng, 6);
    if (a == Bits::repeat(false, 6)) continue;
    CHECK(sample_literal(q, a, 6).prefix(1) == Bits("1"));
  }
}

TEST_CASE("inverse coder") {
  const auto q = MeasureOracle::bernoulli(Rational(1, 3));
  for (const Bits& x : strings_up_to(10)) {
    const InvertResult r = invert(q, x, 64);
    const double bits = -log2_of(q.measure(x));
    REQUIRE(static_cast<double>(r.codeword.size()) >= bits - 1e-9);
    REQUIRE(static_cast<double>(r.codeword.size()) <= bits + 2 + 1e-9);
    REQUIRE(sample_fast(q, r.codeword, x.size(), 64).output == x);
    REQUIRE(is_prefix(r.digits, r.codeword));
  }
  const auto u = MeasureOracle::uniform();
  CHECK(invert(u, Bits("0110"), 64).digits == Bits("0110"));
  CHECK(invert(MeasureOracle::parse("finite 1:1"), Bits("0"), 64).zero_measure);
}

TEST_CASE("pushforward") {
  const auto u = MeasureOracle::uniform();
  const auto b = MeasureOracle::bernoulli(Rational(1, 3));
  const Process id = program_process(Program::assemble("CPALL"), Budget(64));
  const Process one = program_process(Program::assemble("EMIT1 CPALL"), Budget(64));
  const Process drop = drop_first_bit_process();
  for (const Bits& y : strings_up_to(4)) {
    const Dyadic v = pushforward(u, id, y, 8, 16);
    REQUIRE(compare(v, u.measure(y)) >= 0);
    REQUIRE(compare(v - Dyadic::inverse_pow2(8), u.measure(y)) <= 0);
    const Dyadic d = pushforward(b, drop, y, 8, 16);
    REQUIRE(compare(d - Dyadic::inverse_pow2(8), b.measure(y)) <= 0);
    REQUIRE(compare(d, b.measure(y)) >= 0);
  }
  CHECK(compare(pushforward(u, one, Bits("1"), 8, 16), Rational(1)) >= 0);
  const Process stuck = [](const Bits&) { return Bits(); };
  CHECK_THROWS_AS(pushforward(u, stuck, Bits("0"), 8, 6), RegularityError);
}
