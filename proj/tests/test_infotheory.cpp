#include "doctest.h"

#include <cmath>

#include "aitlab/infotheory.hpp"

using namespace aitlab;

TEST_CASE("information records") {
  const Budget b(1000);
  const InfoRecord self = info(Bits("101100"), Bits("101100"), b);
  CHECK(self.k_x_given_y <= 3);
  CHECK(self.info_y_about_x() >= static_cast<std::int64_t>(self.k_x) - 3);
  const InfoRecord none = info(Bits(), Bits("0110"), b);
  CHECK(none.info_y_about_x() == 0);
  for (const Bits& x : strings_up_to(4)) {
    for (const Bits& y : strings_up_to(4)) {
      const InfoRecord r = info(y, x, b);
      REQUIRE(r.info_y_about_x() >= 0);
      REQUIRE(r.info_x_about_y() >= 0);
    }
  }
}

TEST_CASE("symmetry report on a small corpus") {
  const auto corpus = symmetry_corpus(3, 20, 8, 4);
  CHECK(corpus.size() == 15 * 15 + 20);
  const SymmetryReport a = symmetry_report(corpus, Budget(1000), 1);
  const SymmetryReport b = symmetry_report(corpus, Budget(1000), 4);
  CHECK(a.diagonal_zero);
  CHECK(a.information_nonnegative);
  CHECK(a.c_a == b.c_a);
  CHECK(a.c_b == b.c_b);
}

TEST_CASE("pair counting bound") {
  const PairCountResult r = pair_counting_check(5, Budget(1000), 2);
  CHECK(r.holds);
  CHECK(r.worst_ratio <= 1.0);
}

TEST_CASE("markov source") {
  const auto spec = MarkovSourceSpec::parse("3/10 2/5", 1);
  CHECK(spec.stationary_one() == Rational(3, 7));
  const double h = 4.0 / 7 * binary_entropy(0.3) + 3.0 / 7 * binary_entropy(0.4);
  CHECK(spec.entropy_rate() == doctest::Approx(h));
  CHECK(h == doctest::Approx(0.919717).epsilon(1e-5));
  CHECK(markov_generate(spec, 100) == markov_generate(spec, 100));

  const auto alternating = MarkovSourceSpec::parse("1 1", 3);
  const Bits a = markov_generate(alternating, 20);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] != a[i - 1]);
  CHECK_THROWS(MarkovSourceSpec::parse("3/2 1/2", 1));
}

TEST_CASE("entropy experiment") {
  const auto spec = MarkovSourceSpec::parse("3/10 2/5", 1);
  const EntropyReport r = entropy_experiment(spec, 2000, 8, Budget(1000));
  CHECK(r.overhead <= 2.0 + 1e-9);
  CHECK(r.overhead >= 0.0 - 1e-9);
  CHECK(r.trace.back().k == 2000);
  const EntropyReport d = entropy_experiment(MarkovSourceSpec::parse("1 1", 1), 2000, 8, Budget(1000));
  CHECK(d.per_symbol < 0.01);
  CHECK(d.pass);
}
