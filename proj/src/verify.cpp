#include "aitlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "aitlab/bitcodec.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/infotheory.hpp"
#include "aitlab/measure.hpp"
#include "aitlab/parallel.hpp"
#include "aitlab/semimeasure.hpp"

namespace aitlab {

namespace {

using nlohmann::json;

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b;
  b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) b.push_back(rng() & 1U);
  return b;
}

Bits with(Bits x, bool bit) {
  x.push_back(bit);
  return x;
}

std::string show(const Bits& x) { return x.empty() ? std::string("Λ") : x.str(); }

// Mismatch counter that keeps the first offending example.
struct Mismatches {
  std::uint64_t count = 0;
  std::string first;

  void note(const std::string& what) {
    if (count++ == 0) first = what;
  }
  json observed() const {
    if (count == 0) return 0;
    return json{{"mismatches", count}, {"first", first}};
  }
  bool ok() const { return count == 0; }
};

void add_exact(Summary& s, const std::string& name, const Mismatches& m) {
  s.add(name, "0 mismatches", m.observed(), m.ok());
}

const std::vector<MeasureOracle>& sampler_measures() {
  static const std::vector<MeasureOracle> m{
      MeasureOracle::uniform(), MeasureOracle::bernoulli(Rational(1, 3)),
      MeasureOracle::parse("markov 2 [[7/10,3/10],[2/5,3/5]] [1/2,1/2]")};
  return m;
}

}  // namespace

std::vector<Program> registered_processes() {
  return {Program::assemble("CPALL"),          Program::assemble("EMIT0 CPALL"),
          Program::assemble("EMIT1 CPALL"),    Program::assemble("READ DBL"),
          Program::assemble("READ DBL CPALL"), Program::assemble("EMIT1 DBL CPALL")};
}

// ---------------------------------------------------------------------------

void check_codec(Summary& s, const VerifyOptions& o) {
  const std::size_t pair_len = o.len_or(8);
  auto encode = [&](const Bits& x, const Bits& y) {
    if (!o.inject_fault) return pair_encode(x, y);
    Bits d = self_delim(x);
    d.truncate(d.size() - 1);
    return d + y;
  };

  Mismatches num;
  for (std::uint64_t n = 0; n < (std::uint64_t{1} << 16); ++n) {
    const Bits x = from_num(n);
    if (to_index(x) != n || to_num(x) != n || from_num(BigNat(n)) != x) {
      num.note(std::to_string(n));
    }
  }
  add_exact(s, "number_roundtrip_below_2^16", num);

  Mismatches str;
  Mismatches lengths;
  for (const Bits& x : strings_up_to(15)) {
    if (from_num(to_num(x)) != x) str.note(show(x));
    if (x.size() != ell(to_index(x))) lengths.note(show(x) + ": l(x) != ell(n(x))");
    if (self_delim(x).size() != 2 * x.size() + 2) lengths.note(show(x) + ": l(x-bar)");
  }
  add_exact(s, "string_roundtrip_len_le_15", str);

  Mismatches examples;
  const std::vector<std::pair<std::uint64_t, std::string>> table{
      {0, ""}, {1, "0"}, {2, "1"}, {3, "00"}, {6, "11"}, {7, "000"}, {8, "001"}};
  for (const auto& [n, text] : table) {
    if (from_num(n) != Bits(text)) examples.note("from_num(" + std::to_string(n) + ")");
  }
  if (self_delim(Bits()) != Bits("01")) examples.note("bar(Λ)");
  if (self_delim(Bits("1")) != Bits("1101")) examples.note("bar(1)");
  if (self_delim(Bits("01")) != Bits("001101")) examples.note("bar(01)");
  if (encode(Bits("1"), Bits("0")) != Bits("11010")) examples.note("pair(1,0)");
  const PairParts bad = pair_decode(Bits("10"));
  if (bad.well_formed || !bad.first.empty() || !bad.second.empty()) examples.note("decode(10)");
  add_exact(s, "table_examples", examples);

  const std::vector<Bits> all = strings_up_to(pair_len);
  std::vector<Mismatches> parts = parallel_map(all.size(), o.threads, [&](std::size_t i) {
    Mismatches m;
    for (const Bits& y : all) {
      const Bits z = encode(all[i], y);
      const PairParts p = pair_decode(z);
      if (!p.well_formed || p.first != all[i] || p.second != y) {
        m.note("(" + show(all[i]) + "," + show(y) + ")");
      }
      if (z.size() != 2 * all[i].size() + 2 + y.size()) m.note("length of pair");
    }
    return m;
  });
  Mismatches pairs;
  for (const Mismatches& m : parts) {
    if (m.count && pairs.ok()) pairs.first = m.first;
    pairs.count += m.count;
  }
  add_exact(s, "pair_roundtrip_len_le_" + std::to_string(pair_len), pairs);
  add_exact(s, "length_identities", lengths);

  Mismatches counting;
  for (std::size_t n = 0; n <= 16; ++n) {
    if (strings_of_length(n).size() != (std::size_t{1} << n)) counting.note("= " + std::to_string(n));
    if (strings_up_to(n).size() != (std::size_t{2} << n) - 1) {
      counting.note("<= " + std::to_string(n));
    }
    if (n > 0 && strings_up_to(n - 1).size() != (std::size_t{1} << n) - 1) {
      counting.note("< " + std::to_string(n));
    }
  }
  add_exact(s, "counting_identities_n_le_16", counting);

  std::mt19937_64 rng(o.seed);
  Mismatches order;
  for (int t = 0; t < 2000; ++t) {
    const Bits a = random_bits(rng, rng() % 6);
    const Bits b = a + random_bits(rng, rng() % 4);
    const Bits c = b + random_bits(rng, rng() % 4);
    if (!is_prefix(a, a) || !is_prefix(a, b) || !is_prefix(b, c) || !is_prefix(a, c)) {
      order.note("chain " + show(a));
    }
    if (is_prefix(b, a) && b != a) order.note("antisymmetry " + show(a));
  }
  add_exact(s, "prefix_partial_order", order);
}

// ---------------------------------------------------------------------------

void check_search_oracle(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(6);
  const Budget budget(o.budget);
  struct Case {
    Mode mode;
    Bits cond;
  };
  const std::vector<Case> cases{{Mode::Plain, Bits()},
                                {Mode::Conditional, Bits()},
                                {Mode::Conditional, Bits("1")},
                                {Mode::Conditional, Bits("1100")},
                                {Mode::Conditional, Bits("10110")},
                                {Mode::Decision, Bits()},
                                {Mode::Monotone, Bits()},
                                {Mode::Monotone, Bits("0")},
                                {Mode::Monotone, Bits("1100")},
                                {Mode::Monotone, Bits("011010")}};
  const std::vector<Mismatches> results = parallel_map(cases.size(), o.threads, [&](std::size_t i) {
    const Case& c = cases[i];
    ProgramTable table = min_program_table(c.mode, c.cond, len, budget, 15);
    const auto brute = enumerate_programs(5, c.mode, c.cond, budget);
    if (o.inject_fault && i == 0) table.at(Bits("0")).length += 3;
    Mismatches m;
    for (const auto& [x, entry] : table) {
      const auto it = brute.find(x);
      const std::uint64_t want = it == brute.end() ? kInfinite : it->second;
      if (entry.length != want) {
        m.note(std::string(to_string(c.mode)) + " cond=" + show(c.cond) + " x=" + show(x));
        continue;
      }
      if (entry.length == kInfinite) continue;
      ComplexityRecord r;
      r.x = x;
      r.condition = c.cond;
      r.mode = c.mode;
      r.budget = budget;
      r.value = entry.length;
      r.witness = entry.witness;
      if (!replay_matches(r)) m.note("witness replay " + show(x));
    }
    return m;
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    add_exact(s,
              "search_equals_enumeration_" + std::string(to_string(cases[i].mode)) + "_cond_" +
                  (cases[i].cond.empty() ? std::string("empty") : cases[i].cond.str()),
              results[i]);
  }
}

// ---------------------------------------------------------------------------

void check_machine_properties(Summary& s, const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  const Budget budget(o.budget);
  auto random_program = [&](std::size_t max_ops) {
    std::vector<Opcode> ops;
    const std::size_t n = rng() % (max_ops + 1);
    for (std::size_t i = 0; i < n; ++i) ops.push_back(static_cast<Opcode>(rng() % 6));
    return Program::from_ops(ops);
  };

  Mismatches examples;
  if (run(Program::assemble("EMIT0 EMIT1 DBL"), Bits(), Mode::Plain, budget).output !=
      Bits("0101")) {
    examples.note("EMIT0 EMIT1 DBL");
  }
  if (universal_process(program_prefix(Program::assemble("EMIT0")) + Bits("1101"), budget)
          .output != Bits("0")) {
    examples.note("universal EMIT0");
  }
  if (!universal_process(Bits(), budget).output.empty()) examples.note("universal Λ");
  add_exact(s, "machine_examples", examples);

  Mismatches mono;
  Mismatches decisive;
  for (int t = 0; t < 10000; ++t) {
    Bits z = (t % 2 == 0) ? program_prefix(random_program(5)) + random_bits(rng, rng() % 12)
                          : random_bits(rng, 1 + rng() % 40);
    const Bits zp = z.prefix(rng() % (z.size() + 1));
    const RunOutcome a = universal_process(zp, budget);
    const RunOutcome b = universal_process(z, budget);
    Bits out_a = a.output;
    if (o.inject_fault && t == 7) out_a.push_back(!b.output.empty() && !b.output[0]);
    if (!is_prefix(out_a, b.output)) mono.note(show(zp) + " / " + show(z));
    if (universal_process(z, budget) != b) decisive.note(show(z));
  }
  add_exact(s, "universal_process_prefix_monotone", mono);
  add_exact(s, "deterministic_replay", decisive);

  Mismatches grow;
  Mismatches consumed;
  for (int t = 0; t < 5000; ++t) {
    const Program p = random_program(6);
    const Bits cond = random_bits(rng, rng() % 8);
    const std::uint64_t steps = 1 + rng() % 40;
    for (Mode mode : {Mode::Conditional, Mode::Decision, Mode::Monotone}) {
      const RunOutcome a = run(p, cond, mode, Budget(steps));
      const RunOutcome b = run(p, cond, mode, Budget(2 * steps));
      if (!is_prefix(a.output, b.output)) grow.note(p.disassemble());
      if (a.status == RunStatus::Halted && b != a) grow.note("halted changed " + p.disassemble());
      if (a.consumed > cond.size() || a.steps != a.output.size()) consumed.note(p.disassemble());
    }
  }
  add_exact(s, "budget_growth_extends_output", grow);
  add_exact(s, "steps_equal_output_and_reads_bounded", consumed);
}

// ---------------------------------------------------------------------------

void check_level_counting(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(8);
  const Budget budget(o.budget);
  for (Mode mode : {Mode::Plain, Mode::Decision}) {
    const ProgramTable table = min_program_table(mode, Bits(), len, budget);
    std::map<std::uint64_t, std::uint64_t> levels;
    for (const auto& [x, e] : table) {
      if (e.length != kInfinite) ++levels[e.length];
    }
    if (o.inject_fault && mode == Mode::Plain) levels[0] += 2;
    Mismatches m;
    json observed = json::object();
    for (const auto& [a, n] : levels) {
      observed[std::to_string(a)] = n;
      if (a < 63 && n > (std::uint64_t{1} << a)) m.note("level " + std::to_string(a));
    }
    const std::string name = mode == Mode::Plain ? "K" : "KR";
    s.add(name + "_level_count_le_2^a_len_le_" + std::to_string(len), "count(a) <= 2^a",
          observed, m.ok());
  }
}

void check_pair_counting(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(8);
  PairCountResult r = pair_counting_check(len, Budget(o.budget), o.threads);
  if (o.inject_fault) r.holds = r.worst_ratio * 0.5 > 1;
  s.add("pair_count_le_2^(b+c+2)_len_le_" + std::to_string(len), "count(b,c) <= 2^(b+c+2)",
        json{{"worst_b", r.worst_b},
             {"worst_c", r.worst_c},
             {"worst_count", r.worst_count},
             {"worst_ratio", r.worst_ratio}},
        r.holds);
}

// ---------------------------------------------------------------------------

void check_discrete_prior(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(8);
  const std::uint64_t program_bits = 30;

  // Exhaustive Kraft sums: with max_len = budget every output is kept.
  json sums = json::object();
  bool kraft = true;
  for (std::uint64_t b : {1, 2, 4, 8, 12, 16}) {
    Dyadic total;
    for (const auto& [x, m] : m_discrete_table(b, Budget(b), program_bits)) total += m;
    if (o.inject_fault && b == 4) total += Dyadic(1);
    sums[std::to_string(b)] = total.to_double();
    if (total > Dyadic(1)) kraft = false;
  }
  s.add("sum_m_t_le_1_exhaustive", "<= 1", sums, kraft);

  const auto table = m_discrete_table(len, Budget(o.budget), program_bits);
  Dyadic partial;
  for (const auto& [x, m] : table) partial += m;
  s.add("sum_m_t_le_1_len_le_" + std::to_string(len), "<= 1", partial.to_double(),
        partial <= Dyadic(1));

  const ProgramTable k = min_program_table(Mode::Plain, Bits(), len, Budget(o.budget));
  Mismatches bound;
  double max_gap = -INFINITY;
  std::string gap_at;
  for (const auto& [x, m] : table) {
    const std::uint64_t kx = k.at(x).length;
    if (kx == kInfinite) continue;
    const double p = p_discrete(m);
    // p <= sd(K)  <=>  m >= 2^-sd(K), compared exactly.
    if (m < Dyadic::inverse_pow2(self_delimited_length(kx))) bound.note(show(x));
    const double gap = static_cast<double>(kx) - p;
    if (gap > max_gap) {
      max_gap = gap;
      gap_at = show(x);
    }
  }
  add_exact(s, "p_t_le_K_t_plus_2ell_plus_2", bound);
  s.constants["max_K_minus_p"] = max_gap;
  s.constants["max_K_minus_p_at"] = gap_at;
  s.constants["m_t_program_bits"] = program_bits;
}

// ---------------------------------------------------------------------------

void check_majorants(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(6);
  std::mt19937_64 rng(o.seed);

  // Input majorants. The two small tables exceed V1 once merged without
  // shifts; the last stream is not in V1 at all.
  std::vector<PointStream> streams;
  for (std::uint64_t b : {4, 8, 16}) {
    PointStream ps;
    for (const auto& [x, e] : min_program_table(Mode::Plain, Bits(), len, Budget(b))) {
      if (e.length != kInfinite) ps.emplace_back(x, e.length);
    }
    streams.push_back(std::move(ps));
  }
  PointStream by_length;
  for (const Bits& x : strings_up_to(len)) by_length.emplace_back(x, x.size());
  streams.push_back(std::move(by_length));
  streams.push_back({{Bits("0"), 0}, {Bits("1"), 0}});
  streams.push_back({{Bits("00"), 0}, {Bits("01"), 0}});
  PointStream crowded;
  for (const Bits& x : strings_up_to(3)) crowded.emplace_back(x, 0);
  streams.push_back(std::move(crowded));

  const std::uint64_t shift = o.inject_fault ? 0 : 1;
  std::uint64_t total_points = 0;
  for (const PointStream& ps : streams) total_points += ps.size();
  const FinitaryFunction f =
      universal_majorant(streams, Restriction::V1, 4 * total_points, shift);
  s.add("universal_majorant_in_V1", true, in_restriction(f, Restriction::V1),
        in_restriction(f, Restriction::V1));

  Mismatches dominated;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    FinitaryFunction g;
    for (const auto& [x, a] : streams[i]) g.lower(x, a);
    if (!in_restriction(g, Restriction::V1)) continue;
    for (const auto& [x, a] : streams[i]) {
      if (f(x) > a + 1 * (i + 1)) dominated.note("stream " + std::to_string(i) + " x=" + show(x));
    }
  }
  add_exact(s, "universal_majorant_le_input_plus_C_i", dominated);
  s.constants["majorant_shift_C"] = 1;

  std::vector<PointStream> kraft_streams(2);
  for (const Bits& x : strings_up_to(len)) kraft_streams[0].emplace_back(x, 2 * x.size() + 2);
  for (const auto& [x, e] : min_program_table(Mode::Plain, Bits(), len, Budget(o.budget))) {
    if (e.length != kInfinite) kraft_streams[1].emplace_back(x, self_delimited_length(e.length));
  }
  const FinitaryFunction fk = universal_majorant(kraft_streams, Restriction::Kraft, 1u << 16, 1);
  s.add("universal_majorant_in_Kraft", true, in_restriction(fk, Restriction::Kraft),
        in_restriction(fk, Restriction::Kraft));

  const std::vector<Bits> pool = strings_up_to(6);
  Mismatches good;
  for (int t = 0; t < 100; ++t) {
    FinitaryFunction g;
    const std::size_t points = 1 + rng() % 40;
    for (std::size_t i = 0; i < points; ++i) {
      const Bits& x = pool[rng() % pool.size()];
      g.set(x, x.size() + rng() % 4);
    }
    if (o.inject_fault && t == 0) g.set(Bits("1"), 0);
    if (!in_restriction(g, Restriction::V1)) {
      good.note("table " + std::to_string(t) + " not in V1");
      continue;
    }
    try {
      const CodeAssignment codes = majorant_to_codes(g);
      std::set<Bits> seen;
      for (const auto& [code, x] : codes.table) {
        if (!seen.insert(code).second) good.note("duplicate code " + show(code));
        if (g(x) >= code.size()) good.note("code below level for " + show(x));
      }
      for (const auto& [x, a] : g.table()) {
        const auto it = codes.shortest.find(x);
        if (it == codes.shortest.end() || it->second.size() > a + 1) {
          good.note("K_A > f + 1 at " + show(x));
        }
      }
    } catch (const CountingViolation& e) {
      good.note(std::string("unexpected counting violation: ") + e.what());
    }
  }
  add_exact(s, "codes_for_100_V1_tables", good);

  Mismatches bad;
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t a = 1 + rng() % 4;
    const std::size_t points = (std::size_t{1} << a) + 1 + rng() % 4;
    FinitaryFunction g;
    std::vector<Bits> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < points; ++i) g.set(shuffled[i], rng() % a);
    try {
      (void)majorant_to_codes(g);
      bad.note("table " + std::to_string(t) + " accepted");
    } catch (const CountingViolation& e) {
      if (e.points() <= std::uint64_t{1} << e.level()) bad.note("report " + std::string(e.what()));
    }
  }
  add_exact(s, "counting_report_for_100_non_V1_tables", bad);
}

// ---------------------------------------------------------------------------

void check_sampler(Summary& s, const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  Mismatches agree;
  const auto& measures = sampler_measures();
  for (std::size_t k = 0; k < measures.size(); ++k) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng() % 10;
      const Bits a = random_bits(rng, n);
      const Bits lit = sample_literal(measures[k], a, n);
      Bits fast = sample_fast(measures[k], a, n, n).output;
      if (o.inject_fault && k == 1 && t == 0) fast = with(Bits(), !(lit.empty() || lit[0]));
      if (fast.prefix(lit.size()) != lit || fast.size() < lit.size()) {
        agree.note(measures[k].describe() + " alpha=" + show(a));
      }
    }
  }
  add_exact(s, "sample_fast_equals_sample_literal_300_inputs", agree);

  const MeasureOracle q = MeasureOracle::bernoulli(Rational(1, 3));
  const std::size_t trials = 100000;
  std::vector<Bits> inputs;
  inputs.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) inputs.push_back(random_bits(rng, 64));
  const std::vector<Bits> outs = parallel_map(trials, o.threads, [&](std::size_t i) {
    return sample_fast(q, inputs[i], 4, 64).output;
  });
  std::map<Bits, std::uint64_t> hist;
  std::uint64_t first_one = 0;
  std::uint64_t short_outputs = 0;
  for (const Bits& out : outs) {
    if (out.size() < 4) {
      ++short_outputs;
      continue;
    }
    ++hist[out];
    first_one += out[0];
  }
  const double n_ok = static_cast<double>(trials - short_outputs);
  double freq = static_cast<double>(first_one) / n_ok;
  if (o.inject_fault) freq += 0.05;
  s.add("bernoulli_1/3_first_bit_frequency", "1/3 +- 0.01", freq, std::abs(freq - 1.0 / 3) <= 0.01);
  double l1 = 0;
  for (const Bits& x : strings_of_length(4)) {
    const auto it = hist.find(x);
    const double got = it == hist.end() ? 0 : static_cast<double>(it->second) / n_ok;
    l1 += std::abs(got - q.measure(x).get_d());
  }
  s.add("bernoulli_1/3_4bit_L1", "< 0.02", l1, l1 < 0.02);
  s.constants["sampler_trials"] = trials;
  s.constants["sampler_stalls"] = short_outputs;
}

void check_roundtrip(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(12);
  std::mt19937_64 rng(o.seed + 1);
  const auto& measures = sampler_measures();
  const std::size_t trials = 10000;
  struct Trial {
    std::size_t measure;
    Bits alpha;
  };
  std::vector<Trial> plan;
  for (std::size_t i = 0; i < trials; ++i) plan.push_back({i % measures.size(), random_bits(rng, 40)});
  const std::vector<std::string> failures = parallel_map(trials, o.threads, [&](std::size_t i) {
    const MeasureOracle& q = measures[plan[i].measure];
    const Bits& alpha = plan[i].alpha;
    const SampleResult r = sample_fast(q, alpha, 16, 40);
    const Bits used = alpha.prefix(r.consumed);
    InvertResult inv = invert(q, r.output, 80);
    if (o.inject_fault && i == 3) inv.digits = with(used, true);
    if (!is_prefix(inv.digits, used)) return "digits not a prefix of consumed input: " + show(alpha);
    if (sample_fast(q, inv.codeword, r.output.size(), 80).output != r.output) {
      return "codeword does not resample output: " + show(r.output);
    }
    if (sample_fast(q, inv.digits, r.output.size(), inv.digits.size()).output !=
        sample_fast(q, used, r.output.size(), used.size()).output.prefix(
            sample_fast(q, inv.digits, r.output.size(), inv.digits.size()).output.size())) {
      return "guaranteed digits resample inconsistently: " + show(alpha);
    }
    return std::string();
  });
  Mismatches rt;
  for (const std::string& f : failures) {
    if (!f.empty()) rt.note(f);
  }
  add_exact(s, "sample_invert_roundtrip_10^4_trials", rt);

  Mismatches code;
  for (std::size_t k = 1; k < measures.size(); ++k) {
    const MeasureOracle& q = measures[k];
    const std::vector<Bits> xs = strings_up_to(len);
    const std::vector<char> ok = parallel_map(xs.size(), o.threads, [&](std::size_t i) -> char {
      const Rational p = q.measure(xs[i]);
      const std::size_t n = invert(q, xs[i], 4 * len + 64).codeword.size();
      Rational w = Dyadic::inverse_pow2(n).to_rational();
      if (o.inject_fault && i == 5) w /= 16;
      return w * 4 >= p && w <= p * 4 ? 1 : 0;
    });
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!ok[i]) code.note(q.describe() + " x=" + show(xs[i]));
    }
  }
  add_exact(s, "codelength_within_2_bits_len_le_" + std::to_string(len), code);
}

// ---------------------------------------------------------------------------

void check_pushforward(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(6);
  const std::uint64_t n = 8;
  const std::vector<std::pair<std::string, Process>> processes{
      {"identity", program_process(Program::assemble("CPALL"), Budget(256))},
      {"drop_first_bit", drop_first_bit_process()},
      {"READ DBL CPALL", program_process(Program::assemble("READ DBL CPALL"), Budget(256))}};
  const std::vector<MeasureOracle> measures{MeasureOracle::bernoulli(Rational(1, 3)),
                                            MeasureOracle::markov_stationary(Rational(3, 10),
                                                                             Rational(2, 5))};
  const std::vector<Bits> ys = strings_up_to(len);
  for (const auto& [name, f] : processes) {
    for (const MeasureOracle& p : measures) {
      const std::vector<std::string> res = parallel_map(ys.size(), o.threads, [&](std::size_t i) {
        const Bits& y = ys[i];
        const std::size_t depth = y.size() + 2;
        for (const Bits& x : strings_of_length(depth)) {
          if (f(x).size() <= y.size()) return "depth not settled for " + show(y);
        }
        const Rational exact = pushforward_at_depth(p, f, y, depth);
        Rational approx = pushforward(p, f, y, n, 24).to_rational();
        if (o.inject_fault && i == 2) approx += Rational(1, 64);
        Rational diff = approx - exact;
        if (diff < 0) diff = -diff;
        if (diff > Dyadic::inverse_pow2(n).to_rational()) return "error above 2^-8 at " + show(y);
        return std::string();
      });
      Mismatches m;
      for (const std::string& r : res) {
        if (!r.empty()) m.note(r);
      }
      add_exact(s, "pushforward_within_2^-8_" + name + "_" + p.describe(), m);
    }
  }
}

// ---------------------------------------------------------------------------

void check_transducer(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(6);
  const std::size_t stages = 14;
  const MeasureOracle target = MeasureOracle::bernoulli(Rational(1, 4));
  const SemimeasureTable raw = staged_table(target, len, stages);
  s.add("staged_table_is_semimeasure", "no violation",
        raw.first_violation() ? raw.first_violation()->rule : "none",
        !raw.first_violation().has_value());
  const SemimeasureTable normalized = normalize(raw);
  const AllocationState state(normalized);
  const auto violation = state.first_violation();
  s.add("allocation_nesting_disjointness_growth", "no violation",
        violation ? violation->rule + " at " + show(violation->x) + " t=" +
                        std::to_string(violation->t)
                  : std::string("none"),
        !violation.has_value());

  const std::vector<Bits> inputs = strings_of_length(stages);
  const std::vector<Bits> outs = parallel_map(inputs.size(), o.threads,
                                              [&](std::size_t i) { return state.transduce(inputs[i]); });
  std::map<Bits, std::uint64_t, ShortlexLess> hits;
  for (const Bits& y : outs) {
    for (std::size_t k = 0; k <= std::min(y.size(), len); ++k) ++hits[y.prefix(k)];
  }
  const MeasureOracle compare_to =
      o.inject_fault ? MeasureOracle::bernoulli(Rational(3, 8)) : target;
  Rational worst;
  std::string worst_at = "Λ";
  for (const Bits& x : strings_up_to(len)) {
    const Rational got{mpz_class(static_cast<unsigned long>(hits[x])), mpz_class(1) << stages};
    Rational diff = got - compare_to.measure(x);
    if (diff < 0) diff = -diff;
    if (diff > worst) {
      worst = diff;
      worst_at = show(x);
    }
  }
  const bool within = worst <= Rational(1, 64);
  s.add("transducer_pushforward_within_2^-6_len_le_" + std::to_string(len), "<= 2^-6",
        json{{"max_error", worst.get_d()}, {"at", worst_at}}, within);

  std::mt19937_64 rng(o.seed);
  Mismatches mono;
  for (int t = 0; t < 2000; ++t) {
    const Bits z = random_bits(rng, stages);
    const Bits y = z.prefix(rng() % (stages + 1));
    if (!is_prefix(state.transduce(y), state.transduce(z))) mono.note(show(y));
  }
  add_exact(s, "transducer_prefix_monotone", mono);

  bool rejected = false;
  SemimeasureTable decreasing(2, 3);
  decreasing.set(Bits(), 1, Dyadic(1));
  decreasing.set(Bits(), 2, Dyadic(1));
  decreasing.set(Bits(), 3, Dyadic(1));
  decreasing.set(Bits("0"), 2, Dyadic(1, 1));
  decreasing.set(Bits("0"), 3, Dyadic(1, 2));
  try {
    (void)normalize(decreasing);
  } catch (const TableRejected&) {
    rejected = true;
  }
  s.add("normalize_rejects_decreasing_table", true, rejected, rejected);
}

// ---------------------------------------------------------------------------

void check_domination(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(8);
  const std::size_t cap = o.input_cap;
  const Budget budget(o.budget);
  const std::vector<Bits> xs = strings_up_to(len);
  const std::vector<Dyadic> r = parallel_map(xs.size(), o.threads,
                                             [&](std::size_t i) { return universal_R(xs[i], cap, budget); });
  std::map<Bits, Dyadic, ShortlexLess> rv;
  for (std::size_t i = 0; i < xs.size(); ++i) rv.emplace(xs[i], r[i]);

  const Dyadic root = rv.at(Bits());
  s.add("R_root_le_1", "<= 1", root.str(), root <= Dyadic(1));
  Mismatches super;
  for (const Bits& x : strings_up_to(len - 1)) {
    if (rv.at(with(x, false)) + rv.at(with(x, true)) > rv.at(x)) super.note(show(x));
  }
  add_exact(s, "R_superadditive_len_le_" + std::to_string(len), super);

  const std::vector<Bits> small = strings_up_to(4);
  const std::vector<char> same = parallel_map(small.size(), o.threads, [&](std::size_t i) -> char {
    return universal_R(small[i], 16, budget) == universal_R_bruteforce(small[i], 16, budget) ? 1 : 0;
  });
  Mismatches oracle;
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (!same[i]) oracle.note(show(small[i]));
  }
  add_exact(s, "R_equals_enumeration_of_all_inputs_cap_16", oracle);

  const std::vector<Program> procs = registered_processes();
  const MeasureOracle uniform = MeasureOracle::uniform();
  json header_lengths = json::object();
  std::size_t checked = 0;
  for (const Program& p : procs) {
    const std::size_t header = prefix_length(p.length());
    if (header > cap || header > o.budget) continue;
    ++checked;
    header_lengths[p.disassemble()] = header;
    const std::size_t input_len = cap - header;
    const std::uint64_t steps = o.budget - header;
    const std::size_t scale = o.inject_fault ? header + 8 : header;
    const std::vector<char> ok = parallel_map(xs.size(), o.threads, [&](std::size_t i) -> char {
      const Rational q = beta_from_process(p, uniform, xs[i], input_len, steps);
      Rational lhs = rv.at(xs[i]).to_rational();
      mpq_mul_2exp(lhs.get_mpq_t(), lhs.get_mpq_t(), scale);
      return lhs >= q ? 1 : 0;
    });
    Mismatches m;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!ok[i]) m.note(show(xs[i]));
    }
    add_exact(s, "domination_" + p.disassemble(), m);
  }
  s.add("registered_processes_checked", ">= 5", checked, checked >= 5);
  s.constants["domination_header_bits"] = header_lengths;
  s.constants["input_cap"] = cap;
}

// ---------------------------------------------------------------------------

void check_coding_gap(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(8);
  const std::size_t cap = std::max<std::size_t>(o.input_cap, 40);
  CodingGapReport rep = coding_gap_report(len, Budget(o.budget), cap, o.threads);
  if (o.inject_fault) rep.first_holds = rep.first_holds && rep.c1 > 100;
  s.add("neg_log_R_le_KR_plus_2ell_plus_c1", json{{"c1", rep.c1}}, rep.first_holds,
        rep.first_holds);
  s.add("KR_le_neg_log_R_plus_2log_plus_c2", "c2 <= 16", rep.c2, rep.c2 <= 16);
  s.constants["c1"] = rep.c1;
  s.constants["c2"] = rep.c2;
  s.constants["coding_gap_input_cap"] = cap;
}

// ---------------------------------------------------------------------------

void check_information(Summary& s, const VerifyOptions& o) {
  const std::size_t len = o.len_or(4);
  const std::vector<std::pair<Bits, Bits>> corpus = symmetry_corpus(len, 50, 8, o.seed);
  const SymmetryReport a = symmetry_report(corpus, Budget(o.budget), o.threads);
  const SymmetryReport b = symmetry_report(corpus, Budget(2 * o.budget), o.threads);
  bool diagonal = a.diagonal_zero && b.diagonal_zero;
  if (o.inject_fault) diagonal = false;
  s.add("information_nonnegative", true, a.information_nonnegative && b.information_nonnegative,
        a.information_nonnegative && b.information_nonnegative);
  s.add("delta_a_zero_on_diagonal", true, diagonal, diagonal);

  Mismatches empty_cond;
  for (const Bits& x : strings_up_to(len)) {
    if (info(Bits(), x, Budget(o.budget)).info_y_about_x() != 0) empty_cond.note(show(x));
  }
  add_exact(s, "no_information_from_empty_string", empty_cond);

  const std::int64_t drift = std::abs(a.c_a - b.c_a);
  s.add("symmetry_constant_stable_across_budgets", "|c(t) - c(2t)| <= 2",
        json{{"c_a", a.c_a}, {"c_a_doubled_budget", b.c_a}}, drift <= 2);
  s.constants["symmetry_c_a"] = a.c_a;
  s.constants["symmetry_c_b"] = a.c_b;
  s.constants["symmetry_pairs"] = corpus.size();
}

void check_entropy(Summary& s, const VerifyOptions& o) {
  const std::size_t n = 10000;
  const Budget budget(o.budget);
  struct Source {
    std::string name;
    std::string spec;
    double expected;
  };
  const std::vector<Source> sources{{"markov_3/10_2/5", "3/10 2/5", -1},
                                    {"fair_coin", "1/2 1/2", 1},
                                    {"constant", "0 0", 0},
                                    {"alternating", "1 1", 0}};
  for (const Source& src : sources) {
    const MarkovSourceSpec spec = MarkovSourceSpec::parse(src.spec, o.seed);
    EntropyReport rep = entropy_experiment(spec, n, 8, budget);
    if (o.inject_fault && src.expected == 1) rep.per_symbol += 0.1;
    const double h = rep.entropy_rate;
    const bool pass = std::abs(rep.per_symbol - h) <= rep.tolerance;
    s.add("codelength_per_symbol_" + src.name,
          json{{"entropy_rate", h}, {"tolerance", rep.tolerance}}, rep.per_symbol, pass);
    s.add("coder_overhead_le_2_" + src.name, "[0, 2] bits", rep.overhead,
          rep.overhead >= -1e-9 && rep.overhead <= 2 + 1e-9);
    s.constants["block_K_per_symbol_" + src.name] = rep.block_k_per_symbol;
  }
  const MarkovSourceSpec spec = MarkovSourceSpec::parse("3/10 2/5", o.seed);
  const bool same = markov_generate(spec, 2000) == markov_generate(spec, 2000);
  s.add("seeded_source_deterministic", true, same, same);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"codec",   "machine",     "majorant",
                                              "measure", "semimeasure", "info"};
  return names;
}

Summary verify_suite(std::string_view suite, const VerifyOptions& options) {
  Summary s;
  s.config = {{"suite", std::string(suite)},
              {"budget", options.budget},
              {"input_cap", options.input_cap},
              {"seed", options.seed},
              {"fault_injected", options.inject_fault}};
  if (options.max_len) s.config["max_len"] = *options.max_len;
  if (suite == "codec") {
    check_codec(s, options);
  } else if (suite == "machine") {
    check_search_oracle(s, options);
    check_machine_properties(s, options);
  } else if (suite == "majorant") {
    check_level_counting(s, options);
    check_discrete_prior(s, options);
    check_majorants(s, options);
  } else if (suite == "measure") {
    check_sampler(s, options);
    check_roundtrip(s, options);
    check_pushforward(s, options);
  } else if (suite == "semimeasure") {
    check_transducer(s, options);
    check_domination(s, options);
    check_coding_gap(s, options);
  } else if (suite == "info") {
    check_pair_counting(s, options);
    check_information(s, options);
    check_entropy(s, options);
  } else {
    throw std::invalid_argument("unknown suite: " + std::string(suite));
  }
  return s;
}

}  // namespace aitlab
