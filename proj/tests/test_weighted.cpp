#include <cmath>
#include <map>

#include "doctest.h"
#include "testutil.h"
#include "xormc/oracle.h"
#include "xormc/weighted.h"

using namespace xormc;
using namespace xormc::test;

TEST_CASE("dyadic weights normalize and round") {
  const DyadicWeight w = DyadicWeight::make(192, 8);  // 192/256 = 3/4
  CHECK(w.k == 3);
  CHECK(w.m == 2);
  CHECK(w.to_double() == doctest::Approx(0.75));
  CHECK(w.complement().k == 1);
  CHECK(w.complement().m == 2);

  double err = 0.0;
  const DyadicWeight r = DyadicWeight::from_decimal(0.3, 8, &err);
  CHECK(r.k == 77);  // round(0.3 * 256)
  CHECK(r.m == 8);
  CHECK(err == doctest::Approx(std::fabs(0.3 - 77.0 / 256.0)));

  CHECK(DyadicWeight::from_decimal(1.0, 8).is_one());
  CHECK(DyadicWeight::from_decimal(0.0, 8).is_zero());
  CHECK_THROWS_AS(DyadicWeight::from_decimal(1.5, 8), Error);
  CHECK_THROWS_AS(DyadicWeight::from_decimal(-0.1, 8), Error);
}

TEST_CASE("weight lines parse with complement defaults") {
  CnfFormula f = make_formula(2, {{1, 2}});
  f.comments.push_back("c p weight 1 0.75 0");
  const WeightedCnf w = WeightedCnf::from_formula(f);
  CHECK(w.weight_of(Lit(1, true)).to_double() == doctest::Approx(0.75));
  CHECK(w.weight_of(Lit(1, false)).to_double() == doctest::Approx(0.25));
  CHECK(w.weight_of(Lit(2, true)).is_one());
  CHECK(w.weighted_vars() == std::vector<Var>{1});
}

TEST_CASE("explicit non-complementary weights are kept") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 1 0.75 0");
  f.comments.push_back("c p weight -1 0.75 0");
  const WeightedCnf w = WeightedCnf::from_formula(f);
  CHECK(w.weight_of(Lit(1, true)).to_double() == doctest::Approx(0.75));
  CHECK(w.weight_of(Lit(1, false)).to_double() == doctest::Approx(0.75));
}

TEST_CASE("weight parse errors") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 2 0.5 0");  // variable out of range
  CHECK_THROWS_AS(WeightedCnf::from_formula(f), Error);

  CnfFormula g = make_formula(1, {});
  g.comments.push_back("c p weight 1 0.5");  // missing terminator
  CHECK_THROWS_AS(WeightedCnf::from_formula(g), Error);

  CnfFormula h = make_formula(1, {});
  h.comments.push_back("c p weight 1 0.5 0");
  h.comments.push_back("c p weight 1 0.25 0");  // duplicate literal
  CHECK_THROWS_AS(WeightedCnf::from_formula(h), Error);
}

TEST_CASE("chain formulas have exactly k models") {
  // Full space and empty space.
  CHECK(naive_model_count(chain_formula(8, 3)) == 8);
  CHECK(chain_formula(8, 3).clauses.empty());
  CHECK(naive_model_count(chain_formula(0, 3)) == 0);

  // The one-model chain over one variable is a single negative unit.
  const CnfFormula one = chain_formula(1, 1);
  REQUIRE(one.clauses.size() == 1);
  CHECK(one.clauses[0] == Clause{Lit(1, false)});

  CHECK(naive_model_count(chain_formula(5, 3)) == 5);

  // Exhaustive: every k for widths up to 6 (the acceptance suite goes to 10).
  for (uint32_t m = 0; m <= 6; ++m) {
    for (uint64_t k = 0; k <= (1ULL << m); ++k) {
      const CnfFormula c = chain_formula(k, m);
      CHECK(naive_model_count(c) == k);
      CHECK(c.clauses.size() <= m + 1);  // linear size
    }
  }
  CHECK_THROWS_AS(chain_formula(9, 3), Error);
}

TEST_CASE("reduction on a single weighted literal") {
  CnfFormula f = make_formula(1, {{1}});
  f.comments.push_back("c p weight 1 0.75 0");
  const ReductionResult red = reduce_wmc_to_umc(WeightedCnf::from_formula(f));
  CHECK(red.scale_log2 == 2);
  CHECK(red.original_vars == std::vector<Var>{1});
  CHECK(red.gadget_vars == std::vector<Var>{2, 3});
  CHECK(naive_model_count(red.formula) == 3);  // 4 * 3/4
}

TEST_CASE("reduction on a weighted tautology") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 1 0.75 0");
  const ReductionResult red = reduce_wmc_to_umc(WeightedCnf::from_formula(f));
  CHECK(naive_model_count(red.formula) == 4);  // 4 * (3/4 + 1/4)
}

TEST_CASE("reduction without weights is the identity") {
  const CnfFormula f = make_formula(3, {{1, -2}});
  const ReductionResult red = reduce_wmc_to_umc(WeightedCnf::from_formula(f));
  CHECK(red.scale_log2 == 0);
  CHECK(red.formula.num_vars == f.num_vars);
  CHECK(red.formula.clauses == f.clauses);
  CHECK(red.gadget_vars.empty());
}

TEST_CASE("zero and one weights become forced literals or no-ops") {
  CnfFormula f = make_formula(2, {});
  f.comments.push_back("c p weight 1 0 0");
  f.comments.push_back("c p weight 2 1 0");
  const WeightedCnf w = WeightedCnf::from_formula(f);
  // w(1)=0 forces var1 false (complement gives w(-1)=1); w(2)=1 likewise
  // forces nothing once the complement w(-2)=0 blocks var2=0.
  const ReductionResult red = reduce_wmc_to_umc(w);
  CHECK(red.scale_log2 == 0);
  CHECK(naive_model_count(red.formula) == 1);
  const Dyadic exact = exact_weighted_count(w);
  CHECK(exact.to_double() == doctest::Approx(1.0));
}

TEST_CASE("weight zero on both literals is rejected") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 1 0 0");
  f.comments.push_back("c p weight -1 0 0");
  CHECK_THROWS_AS(reduce_wmc_to_umc(WeightedCnf::from_formula(f)), Error);
}

TEST_CASE("reduction exactness over a weighted corpus") {
  Rng rng(31);
  for (int iter = 0; iter < 12; ++iter) {
    const uint32_t n = 3 + rng.below(5);  // up to 7 original vars
    const WeightedCnf w =
        random_weighted_instance(n, 1 + rng.below(2 * n), 1 + rng.below(3), 4, rng);
    const ReductionResult red = reduce_wmc_to_umc(w);
    REQUIRE(red.formula.num_vars <= 22);
    // |R(F')| == 2^scale * W(F) in exact arithmetic.
    const uint64_t reduced_count = exact_count(red.formula, red.formula.support(), 24);
    Dyadic weighted = exact_weighted_count(w);
    REQUIRE(weighted.log2_den <= red.scale_log2);
    const BigUint rhs = weighted.num << (red.scale_log2 - weighted.log2_den);
    CHECK(BigUint(reduced_count) == rhs);
    // The reduction emits plain CNF over original + gadget variables only.
    for (const Clause& c : red.formula.clauses) {
      for (const Lit l : c) CHECK(l.var() <= red.formula.num_vars);
    }
  }
}

TEST_CASE("projection fibers have size 2^scale times the weight") {
  CnfFormula f = make_formula(2, {{1, 2}});
  f.comments.push_back("c p weight 1 0.75 0");
  f.comments.push_back("c p weight 2 0.375 0");
  const WeightedCnf w = WeightedCnf::from_formula(f);
  const ReductionResult red = reduce_wmc_to_umc(w);
  // For every original model, count extensions by brute force.
  for (uint64_t bits = 0; bits < 4; ++bits) {
    if (!naive_satisfies(f, bits)) continue;
    uint64_t fiber = 0;
    const uint32_t total = red.formula.num_vars;
    for (uint64_t ext = 0; ext < (1ULL << total); ++ext) {
      if ((ext & 0b11) != bits) continue;
      if (naive_satisfies(red.formula, ext)) ++fiber;
    }
    double weight = 1.0;
    weight *= w.weight_of(Lit(1, (bits >> 0) & 1)).to_double();
    weight *= w.weight_of(Lit(2, (bits >> 1) & 1)).to_double();
    CHECK(static_cast<double>(fiber) ==
          doctest::Approx(std::ldexp(weight, red.scale_log2)));
  }
}

TEST_CASE("weighted count on an unsatisfiable formula is zero") {
  CnfFormula f = make_formula(1, {{1}, {-1}});
  f.comments.push_back("c p weight 1 0.75 0");
  Rng rng(32);
  const WeightedEstimate est = weighted_count(WeightedCnf::from_formula(f), 0.8, 0.2, rng);
  CHECK(est.value.num.is_zero());
  CHECK(est.raw.exact);
}

TEST_CASE("weighted count of a balanced free variable is one") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 1 0.5 0");
  Rng rng(33);
  const WeightedEstimate est = weighted_count(WeightedCnf::from_formula(f), 0.8, 0.2, rng);
  CHECK(est.value.to_double() == doctest::Approx(1.0));
}

TEST_CASE("weighted count tracks the exact weighted sum on a corpus") {
  Rng rng(34);
  int within = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const WeightedCnf w = random_weighted_instance(8, 12 + rng.below(8), 2, 4, rng);
    const double exact = exact_weighted_count(w).to_double();
    Rng run(7000 + t);
    const WeightedEstimate est = weighted_count(w, 0.8, 0.2, run);
    const double got = est.value.to_double();
    if (exact == 0.0) {
      within += (got == 0.0);
      continue;
    }
    if (got >= exact / 1.8 && got <= exact * 1.8) ++within;
  }
  CHECK(within >= trials - 2);
}

TEST_CASE("weighted sampling is proportional to weight") {
  CnfFormula f = make_formula(1, {});
  f.comments.push_back("c p weight 1 0.75 0");
  Rng rng(35);
  const SampleBatch batch =
      weighted_sample(WeightedCnf::from_formula(f), 16.0, 5000, rng, SampleMode::single);
  uint64_t positives = 0;
  for (const auto& pw : batch.witnesses) {
    REQUIRE(pw.lits.size() == 1);
    positives += pw.lits[0].positive();
  }
  const double p = static_cast<double>(positives) / static_cast<double>(batch.witnesses.size());
  CHECK(p == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("weighted sampling frequency ratio follows the weights") {
  // Two solutions 10 and 01 with weights 3/4 vs 1/4: ratio near 3.
  CnfFormula f = make_formula(2, {{1, 2}, {-1, -2}});
  f.comments.push_back("c p weight 1 0.75 0");
  Rng rng(36);
  const SampleBatch batch =
      weighted_sample(WeightedCnf::from_formula(f), 16.0, 8000, rng, SampleMode::single);
  std::map<std::string, uint64_t> freq;
  for (const auto& pw : batch.witnesses) ++freq[pw.to_dimacs_string()];
  REQUIRE(freq.size() == 2);
  const double ratio = static_cast<double>(freq["1 -2 0"]) / static_cast<double>(freq["-1 2 0"]);
  CHECK(ratio == doctest::Approx(3.0).epsilon(0.15));
}

TEST_CASE("uniform weights reduce to almost-uniform sampling") {
  CnfFormula f = make_formula(3, {{1, 2, 3}});
  for (int v = 1; v <= 3; ++v)
    f.comments.push_back("c p weight " + std::to_string(v) + " 0.5 0");
  Rng rng(37);
  const SampleBatch batch =
      weighted_sample(WeightedCnf::from_formula(f), 16.0, 21000, rng, SampleMode::single);
  std::map<std::string, uint64_t> freq;
  for (const auto& pw : batch.witnesses) ++freq[pw.to_dimacs_string()];
  REQUIRE(freq.size() == 7);
  for (const auto& [key, count] : freq) {
    const double p = static_cast<double>(count) / static_cast<double>(batch.witnesses.size());
    CHECK(p == doctest::Approx(1.0 / 7.0).epsilon(0.12));
  }
}

TEST_CASE("tilt bound basics") {
  CnfFormula balanced = make_formula(2, {});
  balanced.comments.push_back("c p weight 1 0.5 0");
  balanced.comments.push_back("c p weight 2 0.5 0");
  const TiltBound t1 = tilt_bound(WeightedCnf::from_formula(balanced));
  CHECK(!t1.infinite);
  CHECK(t1.to_double() == doctest::Approx(1.0));

  CnfFormula single = make_formula(1, {});
  single.comments.push_back("c p weight 1 0.75 0");
  const TiltBound t2 = tilt_bound(WeightedCnf::from_formula(single));
  CHECK(t2.to_double() == doctest::Approx(3.0));

  CnfFormula zero = make_formula(1, {});
  zero.comments.push_back("c p weight 1 1 0");
  const TiltBound t3 = tilt_bound(WeightedCnf::from_formula(zero));
  CHECK(t3.infinite);
}

TEST_CASE("tilt bound dominates the exact tilt") {
  Rng rng(38);
  for (int iter = 0; iter < 10; ++iter) {
    const WeightedCnf w = random_weighted_instance(6, 6 + rng.below(8), 2, 4, rng);
    const TiltBound bound = tilt_bound(w);
    if (exact_count(w.formula, w.formula.support()) == 0) continue;
    const TiltBound exact = exact_tilt(w);
    if (exact.infinite) continue;
    REQUIRE(!bound.infinite);
    CHECK(bound.to_double() >= exact.to_double() - 1e-9);
  }
}
