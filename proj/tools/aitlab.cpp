// Command-line front end of the library. Exit code 1 marks an invariant
// failure and exit code 2 a usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aitlab/bitcodec.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/infotheory.hpp"
#include "aitlab/measure.hpp"
#include "aitlab/report.hpp"
#include "aitlab/semimeasure.hpp"
#include "aitlab/verify.hpp"

namespace {

using namespace aitlab;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

#ifdef AITLAB_FAULT_INJECTION
constexpr bool kFaultBuild = true;
#else
constexpr bool kFaultBuild = false;
#endif

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "csv";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
};

std::string inf_or(std::uint64_t v) { return v == kInfinite ? "inf" : std::to_string(v); }

void write_output(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + g.out);
  f << text;
}

/// Table output. CSV carries the summary as a leading "# {json}" line when
/// `with_header` is set.
int emit(const Global& g, Summary summary, const Table& table, bool with_header) {
  summary.config["format"] = g.format;
  summary.config["seed"] = g.seed;
  std::string text;
  if (g.format == "json") {
    json j = summary.to_json();
    j["table"] = table.to_json();
    text = j.dump(2) + "\n";
  } else {
    if (with_header) text = "# " + summary.to_json().dump() + "\n";
    text += table.to_csv();
  }
  write_output(g, text);
  if (const Check* c = summary.first_failure()) {
    std::cerr << "FAIL: " << c->name << " (bound " << c->bound.dump() << ", observed "
              << c->observed.dump() << ")\n";
    return kExitInvariant;
  }
  return kExitPass;
}

int emit_checks(const Global& g, Summary summary) {
  Table t{{"name", "bound", "observed", "pass"}, {}};
  for (const Check& c : summary.checks) {
    auto render = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    t.rows.push_back({c.name, render(c.bound), render(c.observed), c.pass ? "true" : "false"});
  }
  return emit(g, std::move(summary), t, true);
}

MeasureOracle parse_measure(const std::string& text) {
  try {
    return MeasureOracle::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad measure: ") + e.what());
  }
}

Bits parse_bits(const std::string& text, const char* what) {
  try {
    return Bits(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + " must be a string of 0/1 digits");
  }
}

// ---------------------------------------------------------------------------

struct ComplexityArgs {
  std::size_t max_len = 6;
  std::uint64_t budget = 10000;
  std::uint64_t program_bits = 15;
  std::string condition;
  bool explain = false;
};

int cmd_complexity(const Global& g, const ComplexityArgs& a) {
  const Budget budget(a.budget);
  const Bits cond = parse_bits(a.condition, "--condition");
  const ProgramTable plain = min_program_table(Mode::Plain, Bits(), a.max_len, budget);
  const ProgramTable conditional =
      cond.empty() ? plain : min_program_table(Mode::Conditional, cond, a.max_len, budget);
  const ProgramTable decision = min_program_table(Mode::Decision, Bits(), a.max_len, budget);
  const auto m = m_discrete_table(a.max_len, budget, a.program_bits);

  Table t{{"x", "k", "kcond", "kr", "m_discrete", "p_discrete", "witness"}, {}};
  if (a.explain) t.columns.push_back("witness_ops");
  std::uint64_t replay_failures = 0;
  std::uint64_t kr_above_k = 0;
  for (const auto& [x, e] : plain) {
    const TableEntry& c = conditional.at(x);
    const TableEntry& d = decision.at(x);
    const Dyadic& mx = m.at(x);
    for (const auto& [mode, entry, y] :
         {std::tuple{Mode::Plain, &e, Bits()},
          std::tuple{cond.empty() ? Mode::Plain : Mode::Conditional, &c, cond},
          std::tuple{Mode::Decision, &d, Bits()}}) {
      ComplexityRecord r;
      r.x = x;
      r.condition = y;
      r.mode = mode;
      r.budget = budget;
      r.value = entry->length;
      if (entry->length != kInfinite) r.witness = entry->witness;
      if (!replay_matches(r)) ++replay_failures;
    }
    if (d.length > e.length) ++kr_above_k;
    std::vector<std::string> row{x.str(),
                                 inf_or(e.length),
                                 inf_or(c.length),
                                 inf_or(d.length),
                                 mx.str(),
                                 format_number(p_discrete(mx)),
                                 e.length == kInfinite ? "" : e.witness.raw().str()};
    if (a.explain) row.push_back(e.length == kInfinite ? "" : e.witness.disassemble());
    t.rows.push_back(std::move(row));
  }
  Summary s;
  s.config = {{"subcommand", "complexity"},
              {"max_len", a.max_len},
              {"budget", a.budget},
              {"program_bits", a.program_bits},
              {"condition", cond.str()}};
  s.add("witness_replay", 0, replay_failures, replay_failures == 0);
  s.add("kr_le_k", 0, kr_above_k, kr_above_k == 0);
  return emit(g, std::move(s), t, false);
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string measure;
  std::size_t n = 0;
  std::string input;
  std::size_t precision_cap = 256;
};

int cmd_sample(const Global& g, const SampleArgs& a, bool have_input) {
  const MeasureOracle q = parse_measure(a.measure);
  Bits alpha;
  if (have_input) {
    alpha = parse_bits(a.input, "--input");
  } else {
    std::mt19937_64 rng(g.seed);
    for (std::size_t i = 0; i < a.precision_cap; ++i) alpha.push_back(rng() & 1U);
  }
  const std::size_t target = a.n > 0 ? a.n : (have_input ? alpha.size() : 16);
  const SampleResult r = sample_fast(q, alpha, target, a.precision_cap);
  if (r.stalled) {
    std::cerr << "warning: sampler stalled after " << r.consumed
              << " input bits; output is partial\n";
  }
  Summary s;
  s.config = {{"subcommand", "sample"},
              {"measure", q.describe()},
              {"n", target},
              {"precision_cap", a.precision_cap},
              {"input_source", have_input ? "argument" : "seed"}};
  Table t{{"measure", "input", "consumed", "output", "stalled"},
          {{q.describe(), alpha.prefix(r.consumed).str(), std::to_string(r.consumed),
            r.output.str(), r.stalled ? "true" : "false"}}};
  return emit(g, std::move(s), t, false);
}

struct InvertArgs {
  std::string measure;
  std::string input;
  std::size_t precision_cap = 256;
};

int cmd_invert(const Global& g, const InvertArgs& a) {
  const MeasureOracle q = parse_measure(a.measure);
  const Bits omega = parse_bits(a.input, "--input");
  const InvertResult r = invert(q, omega, a.precision_cap);
  const Rational p = q.measure(omega);
  Summary s;
  s.config = {{"subcommand", "invert"},
              {"measure", q.describe()},
              {"precision_cap", a.precision_cap}};
  const double neg_log = p == 0 ? INFINITY : -log2_of(p);
  if (!r.zero_measure && !r.capped) {
    const double len = static_cast<double>(r.codeword.size());
    s.add("codelength_within_2_bits", "[-log2 P, -log2 P + 2]", len,
          len >= neg_log - 1e-9 && len <= neg_log + 2 + 1e-9);
  }
  Table t{{"measure", "input", "digits", "codeword", "neg_log2_p", "zero_measure", "capped"},
          {{q.describe(), omega.str(), r.digits.str(), r.codeword.str(), format_number(neg_log),
            r.zero_measure ? "true" : "false", r.capped ? "true" : "false"}}};
  return emit(g, std::move(s), t, false);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::size_t max_len = 0;
  std::uint64_t budget = 10000;
  std::size_t input_cap = 20;
};

int cmd_verify(const Global& g, const VerifyArgs& a, bool have_max_len) {
  VerifyOptions o;
  if (have_max_len) o.max_len = a.max_len;
  o.budget = a.budget;
  o.input_cap = a.input_cap;
  o.seed = g.seed;
  o.threads = g.threads;
  o.inject_fault = kFaultBuild;
  return emit_checks(g, verify_suite(a.suite, o));
}

// ---------------------------------------------------------------------------

struct CodingGapArgs {
  std::size_t max_len = 10;
  std::uint64_t budget = 10000;
  std::size_t input_cap = 48;
};

struct PriorArgs {
  std::uint64_t n_max = 256;
  std::uint64_t budget = 10000;
  std::size_t input_cap = 64;
};

struct SymmetryArgs {
  std::size_t max_len = 6;
  std::uint64_t budget = 10000;
  std::size_t random_pairs = 200;
  std::size_t random_len = 10;
};

struct EntropyArgs {
  std::string markov = "3/10 2/5";
  std::size_t n = 10000;
  std::size_t block = 8;
  std::uint64_t budget = 10000;
};

int cmd_coding_gap(const Global& g, const CodingGapArgs& a) {
  const CodingGapReport rep = coding_gap_report(a.max_len, Budget(a.budget), a.input_cap, g.threads);
  const CodingGapReport twice =
      coding_gap_report(a.max_len, Budget(2 * a.budget), a.input_cap, g.threads);
  Summary s;
  s.config = {{"experiment", "coding-gap"},
              {"max_len", a.max_len},
              {"budget", a.budget},
              {"input_cap", a.input_cap}};
  s.constants = {{"c1", rep.c1}, {"c2", rep.c2}, {"c2_doubled_budget", twice.c2}};
  s.add("neg_log_R_le_KR_plus_2ell_plus_c1", json{{"c1", rep.c1}}, rep.first_holds,
        rep.first_holds);
  s.add("c2_le_16", 16, rep.c2, rep.c2 <= 16);
  s.add("c2_not_growing_at_doubled_budget", rep.c2, twice.c2, twice.c2 <= rep.c2);
  Table t{{"x", "kr", "R", "neg_log2_R", "second_gap", "first_holds"}, {}};
  for (const CodingGapRow& r : rep.rows) {
    t.rows.push_back({r.x.str(), inf_or(r.kr), r.r.str(), format_number(r.neg_log_r),
                      format_number(r.second_gap), r.first_holds ? "true" : "false"});
  }
  return emit(g, std::move(s), t, true);
}

int cmd_prior(const Global& g, const PriorArgs& a) {
  const PriorReport rep = prior_0n1_experiment(a.n_max, Budget(a.budget), a.input_cap, g.threads);
  Summary s;
  s.config = {{"experiment", "prior-0n1"},
              {"n_max", a.n_max},
              {"budget", a.budget},
              {"input_cap", a.input_cap}};
  s.constants = {{"slope", rep.slope}, {"offset", rep.offset}, {"offset_at_slope_7", rep.offset_at_7}};
  s.add("fitted_slope_le_7", 7, rep.slope, rep.slope <= 7);
  s.add("fitted_offset_le_12", rep.offset_limit, rep.offset, rep.offset <= rep.offset_limit);
  Table t{{"n", "kr", "neg_log2_R", "bound"}, {}};
  for (const PriorRow& r : rep.rows) {
    const double n = static_cast<double>(r.n);
    const double bound =
        rep.slope * std::log2(n) + 2 * std::log2(std::log2(n + 2)) + rep.offset;
    t.rows.push_back(
        {std::to_string(r.n), inf_or(r.kr), format_number(r.neg_log_r), format_number(bound)});
  }
  return emit(g, std::move(s), t, true);
}

int cmd_symmetry(const Global& g, const SymmetryArgs& a) {
  const auto corpus = symmetry_corpus(a.max_len, a.random_pairs, a.random_len, g.seed);
  const SymmetryReport rep = symmetry_report(corpus, Budget(a.budget), g.threads);
  const SymmetryReport twice = symmetry_report(corpus, Budget(2 * a.budget), g.threads);
  Summary s;
  s.config = {{"experiment", "symmetry"},
              {"max_len", a.max_len},
              {"random_pairs", a.random_pairs},
              {"random_len", a.random_len},
              {"budget", a.budget}};
  json widest = json::array();
  for (std::size_t i : rep.widest_gaps) {
    const InfoRecord& r = rep.rows[i].record;
    widest.push_back({{"x", r.x.str()}, {"y", r.y.str()}, {"delta_a", rep.rows[i].delta_a}});
  }
  s.constants = {{"c_a", rep.c_a},
                 {"c_b", rep.c_b},
                 {"c_a_doubled_budget", twice.c_a},
                 {"widest_gaps", widest}};
  s.add("delta_a_zero_on_diagonal", true, rep.diagonal_zero, rep.diagonal_zero);
  s.add("information_nonnegative", true, rep.information_nonnegative,
        rep.information_nonnegative && twice.information_nonnegative);
  s.add("c_a_stable_across_budgets", "+-2", twice.c_a - rep.c_a, std::abs(twice.c_a - rep.c_a) <= 2);
  Table t{{"x", "y", "k_x", "k_y", "k_pair", "k_x_given_y", "k_y_given_x", "i_y_about_x",
           "i_x_about_y", "delta_a", "delta_b"},
          {}};
  for (const SymmetryRow& row : rep.rows) {
    const InfoRecord& r = row.record;
    t.rows.push_back({r.x.str(), r.y.str(), std::to_string(r.k_x), std::to_string(r.k_y),
                      std::to_string(r.k_pair), std::to_string(r.k_x_given_y),
                      std::to_string(r.k_y_given_x), std::to_string(r.info_y_about_x()),
                      std::to_string(r.info_x_about_y()), std::to_string(row.delta_a),
                      std::to_string(row.delta_b)});
  }
  return emit(g, std::move(s), t, true);
}

int cmd_entropy(const Global& g, const EntropyArgs& a) {
  MarkovSourceSpec spec;
  try {
    spec = MarkovSourceSpec::parse(a.markov, g.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --markov: ") + e.what());
  }
  const EntropyReport rep = entropy_experiment(spec, a.n, a.block, Budget(a.budget));
  Summary s;
  s.config = {{"experiment", "entropy"},
              {"markov", a.markov},
              {"n", a.n},
              {"block", a.block},
              {"budget", a.budget}};
  s.constants = {{"entropy_rate", rep.entropy_rate},
                 {"per_symbol", rep.per_symbol},
                 {"overhead", rep.overhead},
                 {"block_k_per_symbol", rep.block_k_per_symbol},
                 {"block_neg_log_p_per_symbol", rep.block_log_p_per_symbol},
                 {"blocks", rep.blocks}};
  s.add("per_symbol_codelength_near_entropy_rate",
        json{{"entropy_rate", rep.entropy_rate}, {"tolerance", rep.tolerance}}, rep.per_symbol,
        rep.pass);
  s.add("coder_overhead_le_2", 2, rep.overhead, rep.overhead <= 2 + 1e-9);
  Table t{{"k", "codelength", "neg_log2_p", "per_symbol"}, {}};
  for (const EntropyCheckpoint& c : rep.trace) {
    t.rows.push_back({std::to_string(c.k), std::to_string(c.codelength), format_number(c.neg_log_p),
                      format_number(static_cast<double>(c.codelength) / static_cast<double>(c.k))});
  }
  return emit(g, std::move(s), t, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic information workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default stdout)");

  ComplexityArgs ca;
  CLI::App* complexity = app.add_subcommand("complexity", "Complexity table for all short strings");
  complexity->add_option("--max-len", ca.max_len)->check(CLI::Range(0, 16));
  complexity->add_option("--budget", ca.budget)->check(CLI::PositiveNumber);
  complexity->add_option("--program-bits", ca.program_bits, "Program length cap for m_discrete")
      ->check(CLI::PositiveNumber);
  complexity->add_option("--condition", ca.condition, "Condition y for kcond");
  complexity->add_flag("--explain", ca.explain, "Add disassembled witnesses");

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "Turn uniform bits into measure-distributed bits");
  sample->add_option("--measure", sa.measure)->required();
  sample->add_option("--n", sa.n, "Output length")->check(CLI::PositiveNumber);
  CLI::Option* sample_input = sample->add_option("--input", sa.input, "Uniform input bits");
  sample->add_option("--precision-cap", sa.precision_cap)->check(CLI::PositiveNumber);

  InvertArgs ia;
  CLI::App* inv = app.add_subcommand("invert", "Recover uniform bits from a measure-distributed prefix");
  inv->add_option("--measure", ia.measure)->required();
  inv->add_option("--input", ia.input)->required();
  inv->add_option("--precision-cap", ia.precision_cap)->check(CLI::PositiveNumber);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run a module invariant suite");
  verify->add_option("suite", va.suite)->required()->check(CLI::IsMember(verify_suite_names()));
  CLI::Option* verify_len = verify->add_option("--max-len", va.max_len)->check(CLI::PositiveNumber);
  verify->add_option("--budget", va.budget)->check(CLI::PositiveNumber);
  verify->add_option("--input-cap", va.input_cap)->check(CLI::Range(1, 128));

  CodingGapArgs ga;
  PriorArgs pa;
  SymmetryArgs ya;
  EntropyArgs na;
  CLI::App* experiment = app.add_subcommand("experiment", "Run an experiment harness");
  experiment->require_subcommand(1);
  CLI::App* gap = experiment->add_subcommand("coding-gap");
  gap->add_option("--max-len", ga.max_len)->check(CLI::Range(1, 16));
  gap->add_option("--budget", ga.budget)->check(CLI::PositiveNumber);
  gap->add_option("--input-cap", ga.input_cap)->check(CLI::Range(1, 128));
  CLI::App* prior = experiment->add_subcommand("prior-0n1");
  prior->add_option("--n-max", pa.n_max)->check(CLI::Range(1, 256));
  prior->add_option("--budget", pa.budget)->check(CLI::PositiveNumber);
  prior->add_option("--input-cap", pa.input_cap)->check(CLI::Range(1, 128));
  CLI::App* sym = experiment->add_subcommand("symmetry");
  sym->add_option("--max-len", ya.max_len)->check(CLI::Range(0, 10));
  sym->add_option("--budget", ya.budget)->check(CLI::PositiveNumber);
  sym->add_option("--random-pairs", ya.random_pairs);
  sym->add_option("--random-len", ya.random_len)->check(CLI::Range(0, 16));
  CLI::App* ent = experiment->add_subcommand("entropy");
  ent->add_option("--markov", na.markov, "\"P01 P10\"");
  ent->add_option("--n", na.n)->check(CLI::PositiveNumber);
  ent->add_option("--block", na.block)->check(CLI::Range(1, 12));
  ent->add_option("--budget", na.budget)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*complexity) return cmd_complexity(g, ca);
    if (*sample) return cmd_sample(g, sa, sample_input->count() > 0);
    if (*inv) return cmd_invert(g, ia);
    if (*verify) return cmd_verify(g, va, verify_len->count() > 0);
    if (*gap) return cmd_coding_gap(g, ga);
    if (*prior) return cmd_prior(g, pa);
    if (*sym) return cmd_symmetry(g, ya);
    if (*ent) return cmd_entropy(g, na);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
