#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/machine.hpp"
#include "aitlab/report.hpp"

namespace aitlab {

struct VerifyOptions {
  /// Largest string length swept exhaustively. Each check has its own
  /// default when empty.
  std::optional<std::size_t> max_len;
  std::uint64_t budget = 10000;
  std::size_t input_cap = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Negative control: corrupts one computation inside every check group.
  bool inject_fault = false;

  std::size_t len_or(std::size_t fallback) const { return max_len.value_or(fallback); }
};

// Check groups. Each appends its checks (and fitted constants) to the summary.

/// Codec roundtrips together with the length and counting identities.
void check_codec(Summary& s, const VerifyOptions& o);
/// Breadth-first search against brute-force enumeration in all four modes.
void check_search_oracle(Summary& s, const VerifyOptions& o);
/// Monotonicity of the universal process and of budget growth.
void check_machine_properties(Summary& s, const VerifyOptions& o);
/// At most 2^a strings with K_t(x) = a.
void check_level_counting(Summary& s, const VerifyOptions& o);
/// Pairs with K(y) <= b and K(x|y) <= c number at most 2^(b+c+2).
void check_pair_counting(Summary& s, const VerifyOptions& o);
/// Kraft sum of m_t and the bound p_t <= K_t + 2ℓ(K_t) + 2.
void check_discrete_prior(Summary& s, const VerifyOptions& o);
/// Universal majorant and majorant-to-code conversion.
void check_majorants(Summary& s, const VerifyOptions& o);
/// Fast sampler against the literal construction, and sampling statistics.
void check_sampler(Summary& s, const VerifyOptions& o);
/// sample/invert roundtrips and codelength bounds.
void check_roundtrip(Summary& s, const VerifyOptions& o);
/// Regular-process pushforward against the settled exhaustive value.
void check_pushforward(Summary& s, const VerifyOptions& o);
/// Stage tables and the transducer built from their interval allocation.
void check_transducer(Summary& s, const VerifyOptions& o);
/// Domination of registered processes by R, plus the semimeasure inequalities of R.
void check_domination(Summary& s, const VerifyOptions& o);
/// Both coding-theorem inequalities at a small scale.
void check_coding_gap(Summary& s, const VerifyOptions& o);
/// Symmetry of information on a corpus of pairs, with its fitted constant.
void check_information(Summary& s, const VerifyOptions& o);
/// Convergence of codelength per symbol to the entropy rate.
void check_entropy(Summary& s, const VerifyOptions& o);

const std::vector<std::string>& verify_suite_names();

/// Runs the invariant suite of one module. Throws std::invalid_argument for
/// an unknown suite name.
Summary verify_suite(std::string_view suite, const VerifyOptions& options);

/// Monotone programs used as the hand-built processes of the domination
/// check; all are short enough to run under input_cap 20.
std::vector<Program> registered_processes();

}  // namespace aitlab
