#include "doctest.h"

#include <random>

#include "aitlab/bitcodec.hpp"
#include "aitlab/semimeasure.hpp"

using namespace aitlab;

TEST_CASE("staged Bernoulli table is a semimeasure") {
  const auto q = MeasureOracle::bernoulli(Rational(1, 4));
  const SemimeasureTable t = staged_table(q, 5, 10);
  CHECK_FALSE(t.first_violation().has_value());
  const SemimeasureTable n = normalize(t);
  for (const Bits& x : strings_up_to(5)) REQUIRE(n.beta(x, 10) == t.beta(x, 10));
}

TEST_CASE("normalization rejects decreasing tables") {
  SemimeasureTable t(2, 2);
  t.set(Bits(), 0, Dyadic(1));
  t.set(Bits(), 1, Dyadic(1));
  t.set(Bits(), 2, Dyadic(1));
  t.set(Bits("0"), 1, Dyadic(1, 1));
  t.set(Bits("0"), 2, Dyadic(1, 2));
  try {
    (void)normalize(t);
    FAIL("expected rejection");
  } catch (const TableRejected& e) {
    CHECK(e.violation().x == Bits("0"));
    CHECK(e.violation().t == 2);
  }
}

TEST_CASE("normalization delays excess growth") {
  SemimeasureTable t(1, 1);
  t.set(Bits(), 0, Dyadic(1, 1));
  t.set(Bits(), 1, Dyadic(1, 1));
  t.set(Bits("0"), 1, Dyadic(1, 1));
  t.set(Bits("1"), 1, Dyadic(1, 1));
  CHECK(t.first_violation().has_value());
  const SemimeasureTable n = normalize(t);
  CHECK_FALSE(n.first_violation().has_value());
  CHECK(n.beta(Bits("0"), 1) + n.beta(Bits("1"), 1) <= Dyadic(1, 1));
}

TEST_CASE("allocation invariants and transducer") {
  const auto q = MeasureOracle::bernoulli(Rational(1, 4));
  const SemimeasureTable table = normalize(staged_table(q, 4, 10));
  const AllocationState state(table);
  CHECK_FALSE(state.first_violation().has_value());
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    Bits z;
    for (int k = 0; k < 12; ++k) z.push_back(rng() & 1U);
    const Bits y = z.prefix(rng() % 13);
    REQUIRE(is_prefix(state.transduce(y), state.transduce(z)));
  }

  const Process uni = process_from_beta(staged_table(MeasureOracle::uniform(), 6, 8));
  CHECK(uni(Bits("0110101")) == Bits("011010"));
  const Process ones = process_from_beta(staged_table(MeasureOracle::parse("finite 1:1"), 3, 6));
  CHECK(ones(Bits("010101")).prefix(1) == Bits("1"));
}

TEST_CASE("process semimeasure") {
  const auto u = MeasureOracle::uniform();
  const Program id = Program::assemble("CPALL");
  CHECK(beta_from_process(id, u, Bits("0"), 4) == Rational(1, 2));
  CHECK(beta_from_process(id, u, Bits("0"), 0) == 0);
  CHECK(beta_from_process(id, u, Bits(), 0) == 1);
  const SemimeasureTable t = process_table(Program::assemble("READ DBL"), u, 4, 6);
  CHECK_FALSE(t.first_violation().has_value());
  CHECK(t.beta(Bits("11"), 6) == Dyadic(1, 1));
}

TEST_CASE("universal R agrees with enumeration of all inputs") {
  for (const Budget b : {Budget(1000), Budget(14), Budget(16, 3)}) {
    for (std::size_t cap : {9, 13, 16}) {
      for (const Bits& x : strings_up_to(4)) {
        REQUIRE(universal_R(x, cap, b) == universal_R_bruteforce(x, cap, b));
      }
    }
  }
}

TEST_CASE("universal R is a semimeasure") {
  const Budget b(1000);
  CHECK(universal_R(Bits(), 20, b) == Dyadic(1));
  for (const Bits& x : strings_up_to(6)) {
    REQUIRE(universal_R(x + Bits("0"), 20, b) + universal_R(x + Bits("1"), 20, b) <=
            universal_R(x, 20, b));
    REQUIRE(universal_R(x, 20, b) <= universal_R(x, 22, b));
  }
}
