#include "aitlab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "aitlab/bitcodec.hpp"

namespace aitlab {

namespace {

ComplexityRecord make_record(const Bits& x, const Bits& condition, Mode mode, Budget budget) {
  ComplexityRecord rec;
  rec.x = x;
  rec.condition = condition;
  rec.mode = mode;
  rec.budget = budget;
  TableEntry e = min_program_for(x, mode, condition, budget);
  rec.value = e.length;
  if (e.length != kInfinite) rec.witness = std::move(e.witness);
  return rec;
}

}  // namespace

ComplexityRecord k_plain(const Bits& x, Budget budget) {
  return make_record(x, Bits(), Mode::Plain, budget);
}

ComplexityRecord k_cond(const Bits& x, const Bits& y, Budget budget) {
  return make_record(x, y, y.empty() ? Mode::Plain : Mode::Conditional, budget);
}

ComplexityRecord kr(const Bits& x, Budget budget) {
  return make_record(x, Bits(), Mode::Decision, budget);
}

bool replay_matches(const ComplexityRecord& record) {
  if (!record.witness) return record.value == kInfinite;
  if (record.witness->length() != record.value) return false;
  const RunOutcome r = run(*record.witness, record.condition, record.mode, record.budget);
  if (record.mode == Mode::Decision || record.mode == Mode::Monotone) {
    return is_prefix(record.x, r.output);
  }
  return r.status == RunStatus::Halted && r.output == record.x;
}

std::uint64_t self_delimited_length(std::uint64_t program_bits) noexcept {
  return program_bits + 2 * ell(program_bits) + 2;
}

std::map<Bits, Dyadic, ShortlexLess> m_discrete_table(std::size_t max_len, Budget budget,
                                                      std::uint64_t max_program_bits) {
  if (max_program_bits == kInfinite) {
    throw std::invalid_argument("m_discrete: a finite program-length cap is required");
  }
  const std::size_t cap = static_cast<std::size_t>(
      std::min<std::uint64_t>({max_len, budget.max_steps, budget.max_output}));
  const std::uint64_t max_depth = max_program_bits / 3;

  auto term = [](std::uint64_t len) { return Dyadic::inverse_pow2(self_delimited_length(len)); };

  // Weight of all raw programs whose opcode prefix is a fixed HALT-free
  // sequence of d opcodes that halts by running off the end (r = 0..2
  // trailing bits) or by a following HALT opcode (3 codes, then anything).
  std::vector<Dyadic> weight(max_depth + 1);
  for (std::uint64_t d = 0; d <= max_depth; ++d) {
    Dyadic w;
    for (std::uint64_t r = 0; r < 3; ++r) {
      const std::uint64_t len = 3 * d + r;
      if (len > max_program_bits) break;
      w += Dyadic(mpz_class(1) << static_cast<mp_bitcnt_t>(r), 0) * term(len);
    }
    for (std::uint64_t len = 3 * d + 3; len <= max_program_bits; ++len) {
      w += Dyadic(mpz_class(3) << static_cast<mp_bitcnt_t>(len - 3 * d - 3), 0) * term(len);
    }
    weight[d] = w;
  }

  std::map<Bits, Dyadic, ShortlexLess> m;
  for (const Bits& x : strings_up_to(max_len)) m.emplace(x, Dyadic());

  std::map<Bits, mpz_class> layer{{Bits(), mpz_class(1)}};
  for (std::uint64_t d = 0; d <= max_depth && !layer.empty(); ++d) {
    for (const auto& [out, count] : layer) {
      m[out] += Dyadic(count, 0) * weight[d];
    }
    if (d == max_depth) break;
    std::map<Bits, mpz_class> next;
    for (const auto& [out, count] : layer) {
      auto push = [&](Bits o) {
        if (o.size() > cap) return;
        next[std::move(o)] += count;
      };
      Bits e0 = out;
      e0.push_back(false);
      push(std::move(e0));
      Bits e1 = out;
      e1.push_back(true);
      push(std::move(e1));
      push(out + out);   // DBL
      push(out);         // CPALL copies nothing without a condition
      // READ fails in Plain mode; HALT is accounted for in weight[].
    }
    layer = std::move(next);
  }
  return m;
}

Dyadic m_discrete(const Bits& x, Budget budget, std::uint64_t max_program_bits) {
  const auto table = m_discrete_table(x.size(), budget, max_program_bits);
  return table.at(x);
}

double p_discrete(const Dyadic& m) {
  if (m.is_zero()) return std::numeric_limits<double>::infinity();
  return -log2_of(m);
}

// ---------------------------------------------------------------------------

std::uint64_t FinitaryFunction::operator()(const Bits& x) const {
  auto it = table_.find(x);
  return it == table_.end() ? kInfinite : it->second;
}

void FinitaryFunction::lower(const Bits& x, std::uint64_t value) {
  auto [it, inserted] = table_.emplace(x, value);
  if (!inserted) it->second = std::min(it->second, value);
}

namespace {

// Count check "#{v < a} <= 2^a" for every a, given the multiset of values.
bool counts_within_volume(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t a = values[i] + 1;  // tightest threshold covering values[0..i]
    if (a >= 63) break;
    std::size_t below = i + 1;
    while (below < values.size() && values[below] < a) ++below;
    if (below > (std::uint64_t{1} << a)) return false;
  }
  return true;
}

std::size_t maximal_elements(const std::vector<Bits>& set) {
  std::unordered_set<Bits> members(set.begin(), set.end());
  std::unordered_set<Bits> covered;
  for (const Bits& y : set) {
    for (std::size_t n = 0; n < y.size(); ++n) covered.insert(y.prefix(n));
  }
  std::size_t leaves = 0;
  for (const Bits& x : members) {
    if (!covered.contains(x)) ++leaves;
  }
  return leaves;
}

}  // namespace

bool in_restriction(const FinitaryFunction& f, Restriction r) {
  switch (r) {
    case Restriction::V1: {
      std::vector<std::uint64_t> values;
      for (const auto& [x, v] : f.table()) values.push_back(v);
      return counts_within_volume(std::move(values));
    }
    case Restriction::V2: {
      std::map<Bits, std::vector<std::uint64_t>> by_condition;
      for (const auto& [key, v] : f.table()) by_condition[pair_decode(key).second].push_back(v);
      for (auto& [y, values] : by_condition) {
        if (!counts_within_volume(std::move(values))) return false;
      }
      return true;
    }
    case Restriction::V3: {
      std::set<std::uint64_t> thresholds;
      for (const auto& [x, v] : f.table()) thresholds.insert(v + 1);
      for (const std::uint64_t a : thresholds) {
        if (a >= 63) break;
        std::vector<Bits> below;
        for (const auto& [x, v] : f.table()) {
          if (v < a) below.push_back(x);
        }
        if (maximal_elements(below) > (std::uint64_t{1} << a)) return false;
      }
      return true;
    }
    case Restriction::Kraft: {
      Dyadic sum;
      for (const auto& [x, v] : f.table()) sum += Dyadic::inverse_pow2(v);
      return sum <= Dyadic(1);
    }
  }
  return false;
}

FinitaryFunction universal_majorant(const std::vector<PointStream>& streams, Restriction r,
                                    std::uint64_t steps, std::uint64_t shift_c) {
  const std::size_t n = streams.size();
  std::vector<FinitaryFunction> released(n);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<bool> frozen(n, false);

  auto live = [&](std::size_t i) { return !frozen[i] && cursor[i] < streams[i].size(); };

  // Diagonal dovetailing: round k visits streams 0..k-1.
  std::uint64_t used = 0;
  for (std::size_t round = 1; used < steps; ++round) {
    bool any = false;
    for (std::size_t i = 0; i < std::min(round, n) && used < steps; ++i) {
      if (!live(i)) continue;
      any = true;
      ++used;
      const auto& [x, a] = streams[i][cursor[i]];
      FinitaryFunction trial = released[i];
      trial.lower(x, a);
      if (in_restriction(trial, r)) {
        released[i] = std::move(trial);
        ++cursor[i];
      } else {
        frozen[i] = true;
      }
    }
    if (!any && round >= n) break;
  }

  FinitaryFunction result;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t shift = shift_c * (i + 1);
    for (const auto& [x, v] : released[i].table()) result.lower(x, v + shift);
  }
  return result;
}

CountingViolation::CountingViolation(std::uint64_t level, std::uint64_t points)
    : std::runtime_error("counting violation: " + std::to_string(points) +
                         " points need codes of length " + std::to_string(level)),
      level_(level),
      points_(points) {}

CodeAssignment majorant_to_codes(const FinitaryFunction& f) {
  CodeAssignment out;
  if (f.empty()) return out;
  std::uint64_t top = 0;
  for (const auto& [x, v] : f.table()) top = std::max(top, v);

  for (std::uint64_t level = 1; level <= top + 1; ++level) {
    std::vector<Bits> points;
    for (const auto& [x, v] : f.table()) {
      if (v < level) points.push_back(x);
    }
    if (level < 63 && points.size() > (std::uint64_t{1} << level)) {
      throw CountingViolation(level, points.size());
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      Bits code;
      code.reserve(level);
      for (std::uint64_t b = level; b-- > 0;) {
        code.push_back(b < 64 && ((static_cast<std::uint64_t>(i) >> b) & 1U));
      }
      out.table.emplace_back(code, points[i]);
      out.shortest.emplace(points[i], std::move(code));  // keeps the first (shortest)
    }
  }
  return out;
}

}  // namespace aitlab
