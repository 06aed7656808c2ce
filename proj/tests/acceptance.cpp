// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/infotheory.hpp"
#include "aitlab/semimeasure.hpp"
#include "aitlab/verify.hpp"

namespace {

using namespace aitlab;
using nlohmann::json;

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Summary&, unsigned)> run;
};

VerifyOptions opts(std::size_t max_len, unsigned threads) {
  VerifyOptions o;
  o.max_len = max_len;
  o.threads = threads;
  o.budget = 10000;
  o.seed = 1;
  return o;
}

void coding_gap(Summary& s, unsigned threads) {
  const std::size_t cap = 48;
  const CodingGapReport a = coding_gap_report(10, Budget(10000), cap, threads);
  const CodingGapReport b = coding_gap_report(10, Budget(20000), cap, threads);
  s.add("neg_log_R_le_KR_plus_2ell_plus_c1", json{{"c1", a.c1}}, a.first_holds && b.first_holds,
        a.first_holds && b.first_holds);
  s.add("fitted_c2_le_16", 16, a.c2, a.c2 <= 16);
  s.add("c2_not_growing_at_doubled_budget", a.c2, b.c2, b.c2 <= a.c2);
  s.constants = {{"c1", a.c1}, {"c2", a.c2}, {"c2_doubled_budget", b.c2}, {"input_cap", cap}};
}

void prior(Summary& s, unsigned threads) {
  const PriorReport r = prior_0n1_experiment(256, Budget(10000), 64, threads);
  s.add("fitted_slope_le_7", 7, r.slope, r.slope <= 7);
  s.add("fitted_offset_le_12", 12, r.offset, r.offset <= 12);
  s.constants = {{"slope", r.slope}, {"offset", r.offset}, {"offset_at_slope_7", r.offset_at_7}};
}

void desk_form(Summary& s, unsigned) {
  const std::uint64_t limit = 18;
  for (const std::string name : {"zeros", "alternating"}) {
    std::uint64_t worst = 0;
    std::uint64_t first_break = 0;
    std::uint64_t replay_failures = 0;
    Bits omega;
    for (std::uint64_t n = 1; n <= 4096; ++n) {
      omega.push_back(name == "zeros" ? false : (n % 2 == 0));
      const ComplexityRecord r = kr(omega, Budget(4 * n + 64));
      if (!replay_matches(r)) ++replay_failures;
      worst = std::max(worst, r.value);
      if (r.value > limit && first_break == 0) first_break = n;
    }
    s.add("KR_le_18_bits_" + name + "_n_le_4096", limit,
          json{{"max_KR", worst}, {"first_n_above", first_break}}, first_break == 0);
    s.add("witnesses_replay_" + name, 0, replay_failures, replay_failures == 0);
  }
}

void symmetry(Summary& s, unsigned threads) {
  const auto corpus = symmetry_corpus(6, 200, 10, 1);
  const SymmetryReport a = symmetry_report(corpus, Budget(10000), threads);
  const SymmetryReport b = symmetry_report(corpus, Budget(20000), threads);
  s.add("delta_a_zero_on_diagonal", true, a.diagonal_zero && b.diagonal_zero,
        a.diagonal_zero && b.diagonal_zero);
  s.add("information_nonnegative", true, a.information_nonnegative && b.information_nonnegative,
        a.information_nonnegative && b.information_nonnegative);
  s.add("fitted_c_stable_within_2", json{{"c", a.c_a}}, b.c_a, std::abs(a.c_a - b.c_a) <= 2);
  s.constants = {{"c_a", a.c_a}, {"c_a_doubled_budget", b.c_a}, {"c_b", a.c_b},
                 {"pairs", corpus.size()}};
}

void entropy(Summary& s, unsigned) {
  struct Case {
    std::string name;
    std::string spec;
  };
  for (const Case& c : {Case{"markov_3/10_2/5", "3/10 2/5"}, Case{"fair_coin", "1/2 1/2"},
                        Case{"deterministic", "0 0"}}) {
    const EntropyReport r =
        entropy_experiment(MarkovSourceSpec::parse(c.spec, 1), 10000, 8, Budget(10000));
    s.add("per_symbol_codelength_" + c.name,
          json{{"entropy_rate", r.entropy_rate}, {"tolerance", r.tolerance}}, r.per_symbol, r.pass);
  }
  const double h = (4.0 / 7) * binary_entropy(0.3) + (3.0 / 7) * binary_entropy(0.4);
  const double derived = MarkovSourceSpec::parse("3/10 2/5", 1).entropy_rate();
  s.add("entropy_rate_matches_closed_form", h, derived, std::abs(h - derived) < 1e-12);
}

std::vector<Criterion> criteria() {
  auto group = [](std::size_t len, void (*fn)(Summary&, const VerifyOptions&)) {
    return [len, fn](Summary& s, unsigned threads) { fn(s, opts(len, threads)); };
  };
  return {
      {1, "codec exactness", 5, group(8, check_codec)},
      {2, "search engines agree with enumeration", 60, group(6, check_search_oracle)},
      {3, "counting bounds", 60,
       [](Summary& s, unsigned t) {
         check_level_counting(s, opts(8, t));
         check_pair_counting(s, opts(8, t));
       }},
      {4, "discrete prior and Kraft sum", 60, group(8, check_discrete_prior)},
      {5, "universal majorant and codes", 30, group(6, check_majorants)},
      {6, "sampler equivalence and statistics", 120, group(10, check_sampler)},
      {7, "sample/invert roundtrip and codelength", 60, group(12, check_roundtrip)},
      {8, "pushforward approximation", 60, group(6, check_pushforward)},
      {9, "transducer from a stage function", 120, group(6, check_transducer)},
      {10, "domination by the universal semimeasure", 300, group(8, check_domination)},
      {11, "coding gap", 600, coding_gap},
      {12, "prior on 0^n 1", 300, prior},
      {13, "decision complexity of simple sequences", 30, desk_form},
      {14, "symmetry of information", 300, symmetry},
      {15, "codelength per symbol approaches the entropy rate", 60, entropy},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool verbose = false;
  app.add_option("--criterion", only, "Run a single criterion (1-15)")->check(CLI::Range(1, 15));
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "Print the JSON summary of each criterion");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }

  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Summary s;
    s.config = {{"criterion", c.id}, {"threads", threads}};
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(s, threads);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.add("runtime_seconds", c.limit_s, secs, secs < c.limit_s);
    if (!error.empty()) s.add("no_exception", "none", error, false);
    const bool pass = s.all_pass();
    if (!pass) ++failures;
    char line[256];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %-52s %8.2fs (limit %gs)", c.id,
                  pass ? "PASS" : "FAIL", c.title.c_str(), secs, c.limit_s);
    std::cout << line;
    if (const Check* f = s.first_failure()) {
      std::cout << "  first failing check: " << f->name << " observed " << f->observed.dump();
    }
    std::cout << "\n";
    if (verbose || !pass) std::cout << "  " << s.to_json().dump() << "\n";
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
