#include "doctest.h"

#include <random>

#include "aitlab/machine.hpp"

using namespace aitlab;

TEST_CASE("opcode table examples") {
  const Budget b(1000);
  CHECK(run(Program(), Bits(), Mode::Plain, b).output.empty());
  CHECK(run(Program(), Bits(), Mode::Plain, b).status == RunStatus::Halted);

  const RunOutcome r = run(Program(Bits("000010010")), Bits(), Mode::Plain, b);
  CHECK(r.output == Bits("0000"));
  CHECK(r.status == RunStatus::Halted);

  const RunOutcome c = run(Program(Bits("100")), Bits("1011"), Mode::Conditional, b);
  CHECK(c.output == Bits("1011"));
  CHECK(c.consumed == 4);
  CHECK(c.status == RunStatus::Halted);
}

TEST_CASE("trailing raw bits are ignored") {
  const Program p(Bits("00111"));
  CHECK(p.ops().size() == 1);
  CHECK(run(p, Bits(), Mode::Plain, Budget(10)).output == Bits("1"));
}

TEST_CASE("assembler roundtrip") {
  const Program p = Program::assemble("EMIT0 DBL READ CPALL HALT");
  CHECK(Program::assemble(p.disassemble()) == p);
  CHECK(p.length() == 15);
}

TEST_CASE("budget limits") {
  const RunOutcome r = run(Program::assemble("EMIT1 DBL DBL DBL"), Bits(), Mode::Decision, Budget(5));
  CHECK(r.status == RunStatus::BudgetExceeded);
  CHECK(r.output == Bits("11111"));
  CHECK(r.steps <= 5);
  CHECK_THROWS(Budget(0));
  CHECK_THROWS(run(Program(), Bits("1"), Mode::Plain, Budget(3)));
}

TEST_CASE("read past the condition") {
  const RunOutcome r = run(Program::assemble("READ READ"), Bits("1"), Mode::Conditional, Budget(9));
  CHECK(r.status == RunStatus::InputExhausted);
  CHECK(r.consumed <= 1);
}

TEST_CASE("universal process") {
  const Budget b(1000);
  CHECK(universal_process(Bits(), b).output.empty());
  const Program emit0 = Program::assemble("EMIT0");
  CHECK(universal_process(program_prefix(emit0) + Bits("1101"), b).output == Bits("0"));
  const Program copy = Program::assemble("CPALL");
  CHECK(universal_process(program_prefix(copy) + Bits("101"), b).output == Bits("101"));
  CHECK(program_prefix(copy).size() == prefix_length(3));
}

TEST_CASE("universal process is prefix monotone") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    Bits z;
    const std::size_t len = rng() % 30;
    for (std::size_t i = 0; i < len; ++i) z.push_back(rng() & 1U);
    const Bits y = z.prefix(rng() % (len + 1));
    REQUIRE(is_prefix(universal_process(y, Budget(200)).output,
                      universal_process(z, Budget(200)).output));
  }
}

TEST_CASE("state search agrees with brute force") {
  const Budget b(1000);
  for (Mode mode : {Mode::Plain, Mode::Decision}) {
    const ProgramTable table = min_program_table(mode, Bits(), 6, b, 15);
    const auto brute = enumerate_programs(5, mode, Bits(), b);
    for (const auto& [x, entry] : table) {
      auto it = brute.find(x);
      const std::uint64_t expect = it == brute.end() ? kInfinite : it->second;
      REQUIRE(entry.length == expect);
    }
  }
  const Bits cond("1100");
  const ProgramTable table = min_program_table(Mode::Conditional, cond, 6, b, 15);
  const auto brute = enumerate_programs(5, Mode::Conditional, cond, b);
  for (const auto& [x, entry] : table) {
    auto it = brute.find(x);
    REQUIRE(entry.length == (it == brute.end() ? kInfinite : it->second));
  }
}

TEST_CASE("single-target search matches the table") {
  const Budget b(1000);
  const ProgramTable table = min_program_table(Mode::Plain, Bits(), 7, b);
  for (const auto& [x, entry] : table) {
    REQUIRE(min_program_for(x, Mode::Plain, Bits(), b).length == entry.length);
  }
  CHECK(min_program_for(Bits::repeat(false, 8), Mode::Decision, Bits(), b).length <= 12);
}

TEST_CASE("targeted search agrees with the full table") {
  const Budget b(10000);
  for (const auto& [mode, cond] : std::vector<std::pair<Mode, Bits>>{
           {Mode::Plain, Bits()},
           {Mode::Conditional, Bits("1101")},
           {Mode::Decision, Bits()},
           {Mode::Monotone, Bits("0110")}}) {
    const ProgramTable table = min_program_table(mode, cond, 7, b);
    for (const auto& [x, e] : table) {
      const TableEntry t = min_program_for(x, mode, cond, b);
      REQUIRE(t.length == e.length);
      if (e.length != kInfinite) REQUIRE(t.witness == e.witness);
    }
  }
}
