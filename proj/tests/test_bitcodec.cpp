#include "doctest.h"

#include "aitlab/bitcodec.hpp"

using namespace aitlab;

TEST_CASE("from_num follows the string table") {
  CHECK(from_num(std::uint64_t{0}) == Bits());
  CHECK(from_num(std::uint64_t{1}) == Bits("0"));
  CHECK(from_num(std::uint64_t{2}) == Bits("1"));
  CHECK(from_num(std::uint64_t{6}) == Bits("11"));
  CHECK(from_num(std::uint64_t{8}) == Bits("001"));
  CHECK(to_num(Bits("001")) == 8);
}

TEST_CASE("number roundtrip") {
  for (std::uint64_t n = 0; n < (1U << 12); ++n) {
    REQUIRE(to_index(from_num(n)) == n);
    REQUIRE(from_num(n).size() == ell(n));
  }
  for (const Bits& x : strings_up_to(10)) REQUIRE(from_num(to_num(x)) == x);
}

TEST_CASE("self-delimiting code") {
  CHECK(self_delim(Bits()) == Bits("01"));
  CHECK(self_delim(Bits("1")) == Bits("1101"));
  CHECK(self_delim(Bits("01")) == Bits("001101"));
}

TEST_CASE("pair codec") {
  CHECK(pair_encode(Bits("1"), Bits("0")) == Bits("11010"));
  const PairParts p = pair_decode(Bits("11010"));
  CHECK(p.well_formed);
  CHECK(p.first == Bits("1"));
  CHECK(p.second == Bits("0"));

  const PairParts empty = pair_decode(Bits("01"));
  CHECK(empty.well_formed);
  CHECK(empty.first.empty());
  CHECK(empty.second.empty());

  const PairParts bad = pair_decode(Bits("10"));
  CHECK_FALSE(bad.well_formed);
  CHECK(bad.first.empty());
  CHECK(bad.second.empty());

  for (const Bits& x : strings_up_to(5)) {
    for (const Bits& y : strings_up_to(5)) {
      const PairParts d = pair_decode(pair_encode(x, y));
      REQUIRE(d.first == x);
      REQUIRE(d.second == y);
    }
  }
}

TEST_CASE("incremental delimiter scan") {
  CHECK(scan_self_delim(Bits("11")).status == DelimScan::Status::Incomplete);
  CHECK(scan_self_delim(Bits("10")).status == DelimScan::Status::Malformed);
  const DelimScan s = scan_self_delim(Bits("1101111"));
  CHECK(s.status == DelimScan::Status::Complete);
  CHECK(s.value == Bits("1"));
  CHECK(s.consumed == 4);
}

TEST_CASE("prefix order") {
  CHECK(is_prefix(Bits(), Bits("0110")));
  CHECK(is_prefix(Bits("01"), Bits("0110")));
  CHECK_FALSE(is_prefix(Bits("10"), Bits("0110")));
  CHECK(common_prefix(Bits("0110"), Bits("0101")) == Bits("01"));
}

TEST_CASE("counting identities") {
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(strings_of_length(n).size() == (std::size_t{1} << n));
    if (n > 0) CHECK(strings_up_to(n - 1).size() == (std::size_t{1} << n) - 1);
  }
  CHECK_THROWS_AS(Bits("012"), std::invalid_argument);
}
