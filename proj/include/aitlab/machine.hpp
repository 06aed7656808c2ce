#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/bits.hpp"

namespace aitlab {

/// Reference machine instruction set. Each opcode is 3 raw bits:
///   000 EMIT0   append 0
///   001 EMIT1   append 1
///   010 DBL     output <- output · output
///   011 READ    append the next condition/input bit
///   100 CPALL   append the remaining condition/input bits
///   101..111    HALT
/// The end of the program is an implicit HALT. One or two trailing raw bits
/// that do not form a full opcode are ignored.
enum class Opcode : std::uint8_t { Emit0, Emit1, Dbl, Read, CopyAll, Halt };

/// Plain: no condition, output counts only on Halted.
/// Conditional: finite condition y, output counts only on Halted.
/// Decision: every emitted bit is final, the object is a prefix of the stream.
/// Monotone: condition is a finite prefix of an input stream; CPALL drains
/// what is available and then waits (InputExhausted).
enum class Mode { Plain, Conditional, Decision, Monotone };

enum class RunStatus { Halted, BudgetExceeded, InputExhausted };

inline constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();

std::string_view to_string(Opcode op) noexcept;
std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(RunStatus status) noexcept;
Mode parse_mode(std::string_view name);

/// Resource bound. Every emitted bit costs one step; HALT is free.
struct Budget {
  std::uint64_t max_steps;
  std::uint64_t max_output;

  /// Both limits must be positive (std::invalid_argument otherwise).
  Budget(std::uint64_t steps, std::uint64_t output);
  explicit Budget(std::uint64_t steps) : Budget(steps, steps) {}

  friend bool operator==(const Budget&, const Budget&) = default;
};

class Program {
 public:
  Program() = default;
  explicit Program(Bits raw);

  static Program from_ops(std::span<const Opcode> ops);
  static Program from_ops(std::initializer_list<Opcode> ops);
  /// Parses "EMIT0 DBL CPALL"; the inverse of disassemble().
  static Program assemble(std::string_view text);

  const Bits& raw() const noexcept { return raw_; }
  const std::vector<Opcode>& ops() const noexcept { return ops_; }
  /// Length in raw bits, the quantity every complexity measures.
  std::size_t length() const noexcept { return raw_.size(); }
  std::string disassemble() const;

  friend bool operator==(const Program& a, const Program& b) { return a.raw_ == b.raw_; }

 private:
  Bits raw_;
  std::vector<Opcode> ops_;
};

struct RunOutcome {
  Bits output;
  std::size_t consumed = 0;
  std::uint64_t steps = 0;
  RunStatus status = RunStatus::Halted;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

/// Deterministic execution. Plain mode requires an empty condition.
RunOutcome run(const Program& program, const Bits& condition, Mode mode, Budget budget);

/// The index prefix under which the universal process runs `program`:
/// self_delim(from_num(l(p))) followed by p itself.
Bits program_prefix(const Program& program);
/// l(program_prefix(p)) for a program of `program_bits` raw bits:
/// L + 2ℓ(L) + 2.
std::size_t prefix_length(std::size_t program_bits) noexcept;

/// Universal monotone process. Reads z = bar(u) · p · w with l(p) = to_num(u)
/// and runs p in Monotone mode on w. Decoding costs one step per consumed
/// prefix bit. An incomplete prefix yields Λ (InputExhausted), a malformed
/// one yields Λ for every extension (Halted).
RunOutcome universal_process(const Bits& z, Budget budget);

struct ShortlexLess {
  bool operator()(const Bits& a, const Bits& b) const noexcept { return shortlex_less(a, b); }
};

struct TableEntry {
  std::uint64_t length = kInfinite;  // raw bits, kInfinite when unreachable
  Program witness;
};

using ProgramTable = std::map<Bits, TableEntry, ShortlexLess>;

/// Exact minimal program lengths for every x with l(x) <= max_len, by
/// breadth-first search over machine states (output, read position).
/// Unreachable strings map to kInfinite. `max_program_bits` optionally caps
/// the search depth.
ProgramTable min_program_table(Mode mode, const Bits& condition, std::size_t max_len,
                               Budget budget, std::uint64_t max_program_bits = kInfinite);

/// The same search restricted to states whose output is a prefix of x;
/// cost is linear in l(x) · (l(condition) + 1).
TableEntry min_program_for(const Bits& x, Mode mode, const Bits& condition, Budget budget);

/// Brute-force oracle: runs every opcode sequence of at most `max_opcodes`
/// opcodes and records the minimal length reaching each output (each
/// emitted prefix in Decision/Monotone mode). Only used for validation.
std::map<Bits, std::uint64_t, ShortlexLess> enumerate_programs(std::size_t max_opcodes,
                                                               Mode mode,
                                                               const Bits& condition,
                                                               Budget budget);

}  // namespace aitlab
