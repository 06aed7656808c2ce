#include "doctest.h"

#include <random>
#include <set>

#include "aitlab/bitcodec.hpp"
#include "aitlab/complexity.hpp"

using namespace aitlab;

TEST_CASE("complexity examples") {
  const Budget b(1000);
  CHECK(k_plain(Bits(), b).value == 0);
  CHECK(k_plain(Bits("0000"), b).value <= 9);
  CHECK(kr(Bits(), b).value == 0);
  for (const Bits& x : strings_up_to(6)) {
    const auto k = k_plain(x, b);
    REQUIRE(replay_matches(k));
    REQUIRE(k_cond(x, x, b).value <= 3);
    REQUIRE(k_cond(x, Bits(), b).value == k.value);
    REQUIRE(kr(x, b).value <= k.value);
  }
}

TEST_CASE("decision complexity of a periodic sequence stays bounded") {
  Bits omega;
  for (int i = 0; i < 32; ++i) omega.append(Bits("01"));
  for (std::size_t n = 1; n <= 64; ++n) {
    REQUIRE(kr(omega.prefix(n), Budget(1000)).value <= 3 * 7);
  }
}

namespace {
Dyadic brute_m(const Bits& x, Budget b, std::size_t max_bits) {
  Dyadic total;
  for (std::size_t len = 0; len <= max_bits; ++len) {
    for (const Bits& raw : strings_of_length(len)) {
      const RunOutcome r = run(Program(raw), Bits(), Mode::Plain, b);
      if (r.status == RunStatus::Halted && r.output == x) {
        total += Dyadic::inverse_pow2(self_delimited_length(len));
      }
    }
  }
  return total;
}
}  // namespace

TEST_CASE("discrete semimeasure matches program enumeration") {
  const Budget b(64);
  const auto table = m_discrete_table(4, b, 12);
  for (const auto& [x, m] : table) REQUIRE(m == brute_m(x, b, 12));
  Dyadic sum;
  for (const auto& [x, m] : m_discrete_table(8, b, 15)) sum += m;
  CHECK(sum <= Dyadic(1));
  CHECK_THROWS(m_discrete_table(3, b, kInfinite));
}

TEST_CASE("restriction examples") {
  FinitaryFunction len;
  for (const Bits& x : strings_up_to(8)) len.set(x, x.size());
  CHECK(in_restriction(len, Restriction::V1));
  CHECK(in_restriction(len, Restriction::V3));

  FinitaryFunction crowded;
  crowded.set(Bits(), 0);
  crowded.set(Bits("0"), 0);
  CHECK(in_restriction(crowded, Restriction::V1));
  crowded.set(Bits("1"), 0);
  CHECK_FALSE(in_restriction(crowded, Restriction::V1));

  FinitaryFunction kraft;
  kraft.set(Bits("0"), 1);
  kraft.set(Bits("10"), 2);
  kraft.set(Bits("11"), 2);
  CHECK(in_restriction(kraft, Restriction::Kraft));
  kraft.set(Bits("111"), 2);
  CHECK_FALSE(in_restriction(kraft, Restriction::Kraft));

  FinitaryFunction chain;
  chain.set(Bits(), 0);
  chain.set(Bits("0"), 0);
  CHECK(in_restriction(chain, Restriction::V3));
}

TEST_CASE("universal majorant") {
  CHECK(universal_majorant({}, Restriction::V1, 100, 1).empty());

  PointStream s1;
  for (const Bits& x : strings_up_to(4)) s1.emplace_back(x, x.size() + 1);
  PointStream s2{{Bits("0"), 0}, {Bits("1"), 0}, {Bits("00"), 5}};
  const FinitaryFunction f = universal_majorant({s1, s2}, Restriction::V1, 1000, 1);
  CHECK(in_restriction(f, Restriction::V1));
  for (const auto& [x, a] : s1) CHECK(f(x) <= a + 1);
  CHECK(f(Bits("0")) <= 2);
}

TEST_CASE("codes from a majorant") {
  FinitaryFunction single;
  single.set(Bits(), 0);
  CHECK(majorant_to_codes(single).shortest.at(Bits()).size() <= 1);

  FinitaryFunction len;
  for (const Bits& x : strings_up_to(6)) len.set(x, x.size());
  const CodeAssignment codes = majorant_to_codes(len);
  std::set<Bits> seen;
  for (const auto& [code, x] : codes.table) REQUIRE(seen.insert(code).second);
  for (const auto& [x, code] : codes.shortest) REQUIRE(code.size() <= x.size() + 1);

  FinitaryFunction crowded;
  crowded.set(Bits(), 0);
  crowded.set(Bits("0"), 0);
  crowded.set(Bits("1"), 0);
  CHECK_THROWS_AS(majorant_to_codes(crowded), CountingViolation);
}
