#include "aitlab/machine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "aitlab/bitcodec.hpp"

namespace aitlab {

namespace {

constexpr std::size_t kOpcodeBits = 3;

Opcode decode_opcode(bool b0, bool b1, bool b2) noexcept {
  const unsigned code = (b0 ? 4U : 0U) | (b1 ? 2U : 0U) | (b2 ? 1U : 0U);
  switch (code) {
    case 0: return Opcode::Emit0;
    case 1: return Opcode::Emit1;
    case 2: return Opcode::Dbl;
    case 3: return Opcode::Read;
    case 4: return Opcode::CopyAll;
    default: return Opcode::Halt;
  }
}

Bits encode_opcode(Opcode op) {
  switch (op) {
    case Opcode::Emit0: return Bits("000");
    case Opcode::Emit1: return Bits("001");
    case Opcode::Dbl: return Bits("010");
    case Opcode::Read: return Bits("011");
    case Opcode::CopyAll: return Bits("100");
    case Opcode::Halt: return Bits("101");
  }
  return Bits("101");
}

// Unvalidated executor shared by run() and universal_process(); the limits
// may be zero here.
RunOutcome execute(const std::vector<Opcode>& ops, const Bits& input, Mode mode,
                   std::uint64_t step_limit, std::uint64_t output_limit) {
  RunOutcome r;
  auto emit = [&](bool bit) {
    if (r.steps >= step_limit || r.output.size() >= output_limit) {
      r.status = RunStatus::BudgetExceeded;
      return false;
    }
    r.output.push_back(bit);
    ++r.steps;
    return true;
  };

  for (const Opcode op : ops) {
    switch (op) {
      case Opcode::Emit0:
      case Opcode::Emit1:
        if (!emit(op == Opcode::Emit1)) return r;
        break;
      case Opcode::Dbl: {
        const std::size_t n = r.output.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (!emit(r.output[i])) return r;
        }
        break;
      }
      case Opcode::Read:
        if (r.consumed >= input.size()) {
          r.status = RunStatus::InputExhausted;
          return r;
        }
        if (!emit(input[r.consumed])) return r;
        ++r.consumed;
        break;
      case Opcode::CopyAll:
        while (r.consumed < input.size()) {
          if (!emit(input[r.consumed])) return r;
          ++r.consumed;
        }
        if (mode == Mode::Monotone) {
          r.status = RunStatus::InputExhausted;
          return r;
        }
        break;
      case Opcode::Halt:
        r.status = RunStatus::Halted;
        return r;
    }
  }
  r.status = RunStatus::Halted;
  return r;
}

bool emits_prefixes(Mode mode) noexcept { return mode == Mode::Decision || mode == Mode::Monotone; }

}  // namespace

std::string_view to_string(Opcode op) noexcept {
  switch (op) {
    case Opcode::Emit0: return "EMIT0";
    case Opcode::Emit1: return "EMIT1";
    case Opcode::Dbl: return "DBL";
    case Opcode::Read: return "READ";
    case Opcode::CopyAll: return "CPALL";
    case Opcode::Halt: return "HALT";
  }
  return "?";
}

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Plain: return "plain";
    case Mode::Conditional: return "conditional";
    case Mode::Decision: return "decision";
    case Mode::Monotone: return "monotone";
  }
  return "?";
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Halted: return "halted";
    case RunStatus::BudgetExceeded: return "budget-exceeded";
    case RunStatus::InputExhausted: return "input-exhausted";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::Plain, Mode::Conditional, Mode::Decision, Mode::Monotone}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

Budget::Budget(std::uint64_t steps, std::uint64_t output) : max_steps(steps), max_output(output) {
  if (steps == 0 || output == 0) throw std::invalid_argument("Budget: limits must be positive");
}

Program::Program(Bits raw) : raw_(std::move(raw)) {
  ops_.reserve(raw_.size() / kOpcodeBits);
  for (std::size_t i = 0; i + kOpcodeBits <= raw_.size(); i += kOpcodeBits) {
    ops_.push_back(decode_opcode(raw_[i], raw_[i + 1], raw_[i + 2]));
  }
}

Program Program::from_ops(std::span<const Opcode> ops) {
  Bits raw;
  raw.reserve(ops.size() * kOpcodeBits);
  for (Opcode op : ops) raw.append(encode_opcode(op));
  return Program(std::move(raw));
}

Program Program::from_ops(std::initializer_list<Opcode> ops) {
  return from_ops(std::span<const Opcode>(ops.begin(), ops.size()));
}

Program Program::assemble(std::string_view text) {
  std::vector<Opcode> ops;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    bool found = false;
    for (Opcode op : {Opcode::Emit0, Opcode::Emit1, Opcode::Dbl, Opcode::Read, Opcode::CopyAll,
                      Opcode::Halt}) {
      if (to_string(op) == word) {
        ops.push_back(op);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown mnemonic '" + word + "'");
  }
  return from_ops(ops);
}

std::string Program::disassemble() const {
  std::string out;
  for (Opcode op : ops_) {
    if (!out.empty()) out += ' ';
    out += to_string(op);
  }
  return out;
}

RunOutcome run(const Program& program, const Bits& condition, Mode mode, Budget budget) {
  if (mode == Mode::Plain && !condition.empty()) {
    throw std::invalid_argument("run: Plain mode takes no condition");
  }
  return execute(program.ops(), condition, mode, budget.max_steps, budget.max_output);
}

Bits program_prefix(const Program& program) {
  return self_delim(from_num(static_cast<std::uint64_t>(program.length()))) + program.raw();
}

std::size_t prefix_length(std::size_t program_bits) noexcept {
  return program_bits + 2 * ell(program_bits) + 2;
}

RunOutcome universal_process(const Bits& z, Budget budget) {
  RunOutcome r;
  const DelimScan scan = scan_self_delim(z);
  if (scan.status != DelimScan::Status::Complete) {
    // Everything read so far was spent scanning.
    r.consumed = z.size();
    r.steps = std::min<std::uint64_t>(z.size(), budget.max_steps);
    r.status = scan.status == DelimScan::Status::Malformed ? RunStatus::Halted
                                                           : RunStatus::InputExhausted;
    if (scan.status == DelimScan::Status::Malformed) {
      // Steps up to and including the offending pair.
      std::size_t i = 0;
      while (i + 1 < z.size() && z[i] == z[i + 1]) i += 2;
      r.consumed = i + 2;
      r.steps = std::min<std::uint64_t>(r.consumed, budget.max_steps);
    }
    if (r.steps < r.consumed) r.status = RunStatus::BudgetExceeded;
    return r;
  }

  const std::size_t remaining = z.size() - scan.consumed;
  std::uint64_t program_bits = kInfinite;
  if (scan.value.size() <= 62) program_bits = to_index(scan.value);
  if (program_bits > remaining) {
    r.consumed = z.size();
    r.steps = std::min<std::uint64_t>(z.size(), budget.max_steps);
    r.status = r.steps < r.consumed ? RunStatus::BudgetExceeded : RunStatus::InputExhausted;
    return r;
  }

  const std::size_t header = scan.consumed + static_cast<std::size_t>(program_bits);
  if (header > budget.max_steps) {
    r.consumed = static_cast<std::size_t>(budget.max_steps);
    r.steps = budget.max_steps;
    r.status = RunStatus::BudgetExceeded;
    return r;
  }

  const Program program(z.prefix(header).suffix(scan.consumed));
  RunOutcome inner = execute(program.ops(), z.suffix(header), Mode::Monotone,
                             budget.max_steps - header, budget.max_output);
  inner.consumed += header;
  inner.steps += header;
  return inner;
}

// ---------------------------------------------------------------------------
// Minimal-program search.

namespace {

struct SearchState {
  Bits output;
  std::size_t pos = 0;
  bool terminal = false;  // Monotone CPALL drained the input

  std::string key() const {
    std::string k = output.str();
    k += '|';
    k += std::to_string(pos);
    k += terminal ? 'T' : 'R';
    return k;
  }
};

struct SearchNode {
  SearchState state;
  std::uint64_t depth = 0;
  std::size_t parent = 0;
  Opcode via = Opcode::Halt;
};

constexpr Opcode kSearchOps[] = {Opcode::Emit0, Opcode::Emit1, Opcode::Dbl, Opcode::Read,
                                 Opcode::CopyAll};

// Breadth-first search. `cap` bounds relevant output length: in prefix modes
// outputs are truncated at cap, otherwise longer outputs are dropped.
std::vector<SearchNode> search_states(Mode mode, const Bits& condition, std::size_t cap,
                                      std::uint64_t max_depth) {
  const bool truncate = emits_prefixes(mode);
  std::vector<SearchNode> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  nodes.push_back(SearchNode{});
  seen.emplace(nodes.front().state.key(), 0);

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= max_depth) continue;
    if (nodes[head].state.terminal) continue;
    if (truncate && nodes[head].state.output.size() >= cap) continue;

    for (const Opcode op : kSearchOps) {
      SearchState next = nodes[head].state;
      switch (op) {
        case Opcode::Emit0: next.output.push_back(false); break;
        case Opcode::Emit1: next.output.push_back(true); break;
        case Opcode::Dbl: {
          const Bits copy = next.output;
          next.output.append(copy);
          break;
        }
        case Opcode::Read:
          if (next.pos >= condition.size()) continue;
          next.output.push_back(condition[next.pos++]);
          break;
        case Opcode::CopyAll:
          next.output.append(condition.suffix(next.pos));
          next.pos = condition.size();
          if (mode == Mode::Monotone) next.terminal = true;
          break;
        case Opcode::Halt: continue;
      }
      if (next.output.size() > cap) {
        if (!truncate) continue;
        next.output.truncate(cap);
      }

      auto [it, inserted] = seen.emplace(next.key(), nodes.size());
      if (!inserted) continue;
      SearchNode node;
      node.state = std::move(next);
      node.depth = nodes[head].depth + 1;
      node.parent = head;
      node.via = op;
      nodes.push_back(std::move(node));
    }
  }
  return nodes;
}

Program witness_of(const std::vector<SearchNode>& nodes, std::size_t index) {
  std::vector<Opcode> ops;
  while (index != 0) {
    ops.push_back(nodes[index].via);
    index = nodes[index].parent;
  }
  std::reverse(ops.begin(), ops.end());
  return Program::from_ops(ops);
}

// The same search when every state must be a prefix of `target`: the output
// is then determined by its length, so states are (length, pos, terminal)
// and a DBL is checked against the Z-array of the target. Expansion order
// matches search_states, so witnesses coincide.
TableEntry targeted_search(Mode mode, const Bits& condition, const Bits& target) {
  const bool truncate = emits_prefixes(mode);
  const std::size_t cap = target.size();
  const std::size_t c = condition.size();

  std::vector<std::size_t> z(cap + 1, 0);
  z[0] = cap;
  for (std::size_t i = 1, l = 0, r = 0; i < cap; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < cap && target[z[i]] == target[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }

  struct Node {
    std::size_t len;
    std::size_t pos;
    bool terminal;
    std::uint64_t depth;
    std::size_t parent;
    Opcode via;
  };
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> seen((cap + 1) * (c + 1) * 2, kUnseen);
  auto slot = [&](std::size_t len, std::size_t pos, bool terminal) {
    return (len * (c + 1) + pos) * 2 + (terminal ? 1 : 0);
  };
  std::vector<Node> nodes{Node{0, 0, false, 0, 0, Opcode::Halt}};
  seen[slot(0, 0, false)] = 0;

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node cur = nodes[head];
    if (cur.len == cap) {
      std::vector<Opcode> ops;
      for (std::size_t i = head; i != 0; i = nodes[i].parent) ops.push_back(nodes[i].via);
      std::reverse(ops.begin(), ops.end());
      return TableEntry{cur.depth * kOpcodeBits, Program::from_ops(ops)};
    }
    if (cur.terminal) continue;

    for (const Opcode op : kSearchOps) {
      std::size_t len = cur.len;
      std::size_t pos = cur.pos;
      bool terminal = false;
      switch (op) {
        case Opcode::Emit0:
        case Opcode::Emit1:
          if (target[len] != (op == Opcode::Emit1)) continue;
          ++len;
          break;
        case Opcode::Dbl: {
          std::size_t grown = 2 * len;
          if (grown > cap) {
            if (!truncate) continue;
            grown = cap;
          }
          if (len > 0 && z[len] < grown - len) continue;
          len = grown;
          break;
        }
        case Opcode::Read:
          if (pos >= c || target[len] != condition[pos]) continue;
          ++len;
          ++pos;
          break;
        case Opcode::CopyAll: {
          std::size_t grown = len + (c - pos);
          if (grown > cap) {
            if (!truncate) continue;
            grown = cap;
          }
          bool match = true;
          for (std::size_t i = len; i < grown && match; ++i) match = target[i] == condition[pos + i - len];
          if (!match) continue;
          len = grown;
          pos = c;
          terminal = mode == Mode::Monotone;
          break;
        }
        case Opcode::Halt: continue;
      }
      std::size_t& mark = seen[slot(len, pos, terminal)];
      if (mark != kUnseen) continue;
      mark = nodes.size();
      nodes.push_back(Node{len, pos, terminal, cur.depth + 1, head, op});
    }
  }
  return {};
}

std::size_t effective_cap(std::size_t max_len, Budget budget) {
  return static_cast<std::size_t>(
      std::min<std::uint64_t>({max_len, budget.max_steps, budget.max_output}));
}

void check_mode_condition(Mode mode, const Bits& condition) {
  if (mode == Mode::Plain && !condition.empty()) {
    throw std::invalid_argument("Plain mode takes no condition");
  }
}

}  // namespace

ProgramTable min_program_table(Mode mode, const Bits& condition, std::size_t max_len,
                               Budget budget, std::uint64_t max_program_bits) {
  check_mode_condition(mode, condition);
  const std::size_t cap = effective_cap(max_len, budget);
  const std::uint64_t max_depth =
      max_program_bits == kInfinite ? kInfinite : max_program_bits / kOpcodeBits;
  const auto nodes = search_states(mode, condition, cap, max_depth);

  ProgramTable table;
  for (const Bits& x : strings_up_to(max_len)) table.emplace(x, TableEntry{});

  // BFS order means the first node to reach an entry is a shortest witness.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::uint64_t length = nodes[i].depth * kOpcodeBits;
    const Bits& out = nodes[i].state.output;
    const std::size_t lo = emits_prefixes(mode) ? 0 : out.size();
    for (std::size_t n = lo; n <= out.size(); ++n) {
      auto it = table.find(out.prefix(n));
      if (it == table.end() || it->second.length <= length) continue;
      it->second.length = length;
      it->second.witness = witness_of(nodes, i);
    }
  }
  return table;
}

TableEntry min_program_for(const Bits& x, Mode mode, const Bits& condition, Budget budget) {
  check_mode_condition(mode, condition);
  if (x.size() > budget.max_steps || x.size() > budget.max_output) return {};
  return targeted_search(mode, condition, x);
}

std::map<Bits, std::uint64_t, ShortlexLess> enumerate_programs(std::size_t max_opcodes,
                                                               Mode mode,
                                                               const Bits& condition,
                                                               Budget budget) {
  check_mode_condition(mode, condition);
  std::map<Bits, std::uint64_t, ShortlexLess> best;
  auto record = [&](const Bits& x, std::uint64_t len) {
    auto [it, inserted] = best.emplace(x, len);
    if (!inserted) it->second = std::min(it->second, len);
  };

  for (std::size_t k = 0; k <= max_opcodes; ++k) {
    const std::size_t bits = k * kOpcodeBits;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      Bits raw;
      raw.reserve(bits);
      for (std::size_t i = bits; i-- > 0;) raw.push_back((code >> i) & 1U);
      const RunOutcome r = run(Program(std::move(raw)), condition, mode, budget);
      if (emits_prefixes(mode)) {
        for (std::size_t n = 0; n <= r.output.size(); ++n) record(r.output.prefix(n), bits);
      } else if (r.status == RunStatus::Halted) {
        record(r.output, bits);
      }
    }
  }
  return best;
}

}  // namespace aitlab
