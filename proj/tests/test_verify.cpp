#include <gtest/gtest.h>

#include <cmath>

#include "masstransport/errors.hpp"
#include "masstransport/spec_json.hpp"
#include "masstransport/verify.hpp"
#include "oracle.hpp"

using mtp::Index;
using mtp::McOptions;
using mtp::Process;
using mtp::Rational;

namespace {

Process load(const std::string& name) {
  return Process::make(mtp::parse_spec(std::string(MTP_SPEC_DIR) + "/" + name));
}

const std::vector<std::string>& finite_support() {
  static const std::vector<std::string> names{"two_point.json",    "two_point_markov.json", "p06_walk.json",
                                              "markov_positive.json", "alternating.json",   "moving_average.json",
                                              "constant_plus.json", "constant_minus.json",  "mixture_pm.json",
                                              "mixture_walks.json"};
  return names;
}

/// Brute force over i.i.d. paths of E[M(0, n)] and E[M(-n, 0)].
std::pair<Rational, Rational> oracle_identity(const std::vector<Rational>& values, const std::vector<Rational>& probs,
                                              Index n) {
  Rational lhs = 0;
  Rational rhs = 0;
  oracle::iid_paths(values, probs, static_cast<std::size_t>(n), [&](const std::vector<Rational>& x, const Rational& p) {
    lhs += p * oracle::mass(oracle::sums<Rational>(0, x), n, 0, n);
    rhs += p * oracle::mass(oracle::sums<Rational>(-n, x), 0, -n, 0);
  });
  return {lhs, rhs};
}

McOptions mc(std::uint64_t seed, std::uint64_t trials = 100000) {
  McOptions o;
  o.seed = seed;
  o.trials = trials;
  return o;
}

}  // namespace

TEST(ExactIdentity, TwoPointFirstTermsAreZeroAndOneQuarter) {
  const auto p = load("two_point.json");
  const auto one = mtp::exact_identity(p, 1);
  EXPECT_EQ(one.lhs, 0);
  EXPECT_EQ(one.rhs, 0);
  const auto two = mtp::exact_identity(p, 2);
  EXPECT_EQ(two.lhs, Rational(1, 4));
  EXPECT_EQ(two.rhs, Rational(1, 4));
}

TEST(ExactIdentity, TwoPointMatchesBruteForce) {
  const auto p = load("two_point.json");
  const std::vector<Rational> values{Rational(2), Rational(-1)};
  const std::vector<Rational> probs{Rational(1, 2), Rational(1, 2)};
  // Frozen from the brute-force oracle.
  const std::map<Index, Rational> frozen{{2, Rational(1, 4)}, {3, Rational(1, 8)}, {4, Rational(0)},
                                         {5, Rational(1, 32)}, {8, Rational(3, 256)}};
  for (Index n = 1; n <= 8; ++n) {
    const auto [olhs, orhs] = oracle_identity(values, probs, n);
    const auto got = mtp::exact_identity(p, n);
    EXPECT_EQ(got.lhs, olhs) << n;
    EXPECT_EQ(got.rhs, orhs) << n;
    EXPECT_EQ(olhs, orhs) << n;
    if (frozen.count(n)) EXPECT_EQ(olhs, frozen.at(n)) << n;
  }
}

TEST(ExactIdentity, MarkovTwinGivesOneQuarter) {
  const auto pair = mtp::exact_identity(load("two_point_markov.json"), 2);
  EXPECT_EQ(pair.lhs, Rational(1, 4));
  EXPECT_EQ(pair.rhs, Rational(1, 4));
}

TEST(ExactIdentity, HoldsForEveryBundledFiniteSupportProcess) {
  for (const auto& name : finite_support()) {
    const auto p = load(name);
    const auto report = mtp::exact_identity_report(p, 8);
    ASSERT_EQ(report.entries.size(), 8u);
    for (const auto& e : report.entries) EXPECT_EQ(*e.exact_lhs, *e.exact_rhs) << name << " n=" << e.n;
    EXPECT_TRUE(report.all_pass()) << name;
  }
}

TEST(ExactIdentity, ErrorPaths) {
  EXPECT_THROW(mtp::exact_identity(load("gaussian.json"), 2), mtp::UnsupportedProcess);
  EXPECT_THROW(mtp::exact_identity(load("two_point.json"), 9), mtp::ExplosionCap);
  mtp::ExactOptions small;
  small.horizon_cap = 8;
  small.atom_cap = 8;
  EXPECT_THROW(mtp::exact_identity(load("two_point.json"), 4, small), mtp::ExplosionCap);
}

TEST(McIdentity, TwoPointAgreesWithExact) {
  const auto report = mtp::mc_identity(load("two_point.json"), 2, mc(17));
  ASSERT_EQ(report.entries.size(), 2u);
  EXPECT_TRUE(report.all_pass());
  const auto& e = report.entries[1];
  EXPECT_LE(std::abs(e.mc_lhs->mean - 0.25), 4.0 * e.mc_lhs->std_error);
  EXPECT_LE(std::abs(e.mc_rhs->mean - 0.25), 4.0 * e.mc_rhs->std_error);
}

TEST(McIdentity, ConstantPathSendsNothing) {
  const auto report = mtp::mc_identity(load("constant_plus.json"), 4, mc(1, 100));
  for (const auto& e : report.entries) {
    EXPECT_EQ(e.mc_lhs->mean, 0.0);
    EXPECT_EQ(e.mc_rhs->mean, 0.0);
    EXPECT_TRUE(e.pass);
  }
}

TEST(McIdentity, GaussianPassesForEveryTerm) {
  const auto report = mtp::mc_identity(load("gaussian.json"), 8, mc(23, 20000));
  EXPECT_TRUE(report.all_pass());
}

TEST(McIdentity, RejectsSingleTrial) {
  EXPECT_THROW(mtp::mc_identity(load("two_point.json"), 2, mc(1, 1)), std::invalid_argument);
}

TEST(MaximalErgodic, ExactExamples) {
  EXPECT_EQ(mtp::exact_maximal_ergodic(load("two_point.json"), 2), Rational(-1, 2));
  EXPECT_EQ(mtp::exact_maximal_ergodic(load("constant_minus.json"), 1), Rational(-1));
  EXPECT_EQ(mtp::exact_maximal_ergodic(load("constant_plus.json"), 5), Rational(0));
}

TEST(MaximalErgodic, ExactMatchesBruteForce) {
  const auto p = load("p06_walk.json");
  for (Index n = 1; n <= 6; ++n) {
    Rational expected = 0;
    oracle::iid_paths({Rational(1), Rational(-1)}, {Rational(3, 5), Rational(2, 5)}, static_cast<std::size_t>(n),
                      [&](const std::vector<Rational>& x, const Rational& prob) {
                        Rational s = 0;
                        bool hit = false;
                        for (const auto& v : x) {
                          s += v;
                          hit = hit || s <= 0;
                        }
                        if (hit) expected += prob * x[0];
                      });
    EXPECT_EQ(mtp::exact_maximal_ergodic(p, n), expected) << n;
  }
}

TEST(MaximalErgodic, SignHoldsForBundledProcesses) {
  for (const auto& name : finite_support()) {
    const auto p = load(name);
    for (Index n = 1; n <= 8; ++n) EXPECT_LE(mtp::exact_maximal_ergodic(p, n), 0) << name << " N=" << n;
  }
}

TEST(MaximalErgodic, MonteCarloExamples) {
  const auto e = mtp::mc_maximal_ergodic(load("two_point.json"), 2, mc(5));
  EXPECT_LE(std::abs(e.mean + 0.5), 3.0 * e.std_error);
  const auto g = mtp::mc_maximal_ergodic(load("gaussian.json"), 16, mc(6));
  EXPECT_LE(g.mean, 3.0 * g.std_error);
  const auto c = mtp::mc_maximal_ergodic(load("constant_plus.json"), 8, mc(7, 1000));
  EXPECT_EQ(c.mean, 0.0);
  EXPECT_EQ(c.std_error, 0.0);
}

TEST(Survival, ExactExamples) {
  const auto walk = load("p06_walk.json");
  EXPECT_EQ(mtp::exact_survival(walk, 1), Rational(3, 5));
  // +++ and ++- survive three steps: 27/125 + 18/125.
  EXPECT_EQ(mtp::exact_survival(walk, 3), Rational(9, 25));
  EXPECT_EQ(mtp::exact_survival(load("two_point.json"), 2), Rational(1, 2));
}

TEST(Survival, ExactMatchesBruteForce) {
  const auto p = load("two_point.json");
  for (Index n = 1; n <= 8; ++n) {
    Rational expected = 0;
    oracle::iid_paths({Rational(2), Rational(-1)}, {Rational(1, 2), Rational(1, 2)}, static_cast<std::size_t>(n),
                      [&](const std::vector<Rational>& x, const Rational& prob) {
                        Rational s = 0;
                        bool alive = true;
                        for (const auto& v : x) {
                          s += v;
                          alive = alive && s > 0;
                        }
                        if (alive) expected += prob;
                      });
    EXPECT_EQ(mtp::exact_survival(p, n), expected) << n;
  }
}

TEST(Survival, ExactIsMonotoneAndPositiveForPositiveMean) {
  for (const auto& name : finite_support()) {
    const auto p = load(name);
    Rational previous = 1;
    for (Index n = 1; n <= 8; ++n) {
      const auto v = mtp::exact_survival(p, n);
      EXPECT_LE(v, previous) << name << " N=" << n;
      if (p.mean() > 0) EXPECT_GT(v, 0) << name << " N=" << n;
      previous = v;
    }
  }
}

TEST(Survival, DegenerateMonteCarlo) {
  const auto up = mtp::mc_survival(load("constant_plus.json"), 64, mc(1, 500));
  EXPECT_EQ(up.mean, 1.0);
  EXPECT_EQ(up.std_error, 0.0);
  const auto down = mtp::mc_survival(load("constant_minus.json"), 64, mc(1, 500));
  EXPECT_EQ(down.mean, 0.0);
}

TEST(Survival, MonteCarloMatchesExactAtSmallHorizon) {
  const auto p = load("p06_walk.json");
  const auto e = mtp::mc_survival(p, 8, mc(99));
  const double exact = mtp::to_double(mtp::exact_survival(p, 8));
  EXPECT_LE(std::abs(e.mean - exact), 4.0 * e.std_error);
}

TEST(Survival, TailBound) {
  const auto bound = mtp::survival_tail_bound(load("p06_walk.json"), 2048);
  ASSERT_TRUE(bound);
  EXPECT_GT(*bound, 0.0);
  EXPECT_LT(*bound, 1e-15);
  // rho = 2 sqrt(pq) for +/-1 steps.
  const double rho = 2.0 * std::sqrt(0.24);
  const auto short_bound = mtp::survival_tail_bound(load("p06_walk.json"), 10);
  EXPECT_NEAR(*short_bound, std::pow(rho, 11) / (1.0 - rho), 1e-9);
  EXPECT_EQ(mtp::survival_tail_bound(load("constant_plus.json"), 10), 0.0);
  EXPECT_FALSE(mtp::survival_tail_bound(load("gaussian.json"), 10));
  EXPECT_FALSE(mtp::survival_tail_bound(load("constant_minus.json"), 10));
}

TEST(Determinism, ThreadCountDoesNotChangeEstimates) {
  const auto p = load("ma_gaussian.json");
  auto one = mc(3, 5000);
  one.threads = 1;
  auto many = one;
  many.threads = 5;
  const auto a = mtp::mc_survival(p, 32, one);
  const auto b = mtp::mc_survival(p, 32, many);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  const auto ra = mtp::mc_identity(p, 3, one);
  const auto rb = mtp::mc_identity(p, 3, many);
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    EXPECT_EQ(ra.entries[i].mc_lhs->mean, rb.entries[i].mc_lhs->mean);
    EXPECT_EQ(ra.entries[i].mc_rhs->std_error, rb.entries[i].mc_rhs->std_error);
  }
}

TEST(Estimate, SummaryInvariants) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto e = mtp::summarize(xs);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt((2.25 * 2 + 0.25 * 2) / 3.0 / 4.0));
  EXPECT_LE(e.ci_low, e.mean);
  EXPECT_LE(e.mean, e.ci_high);
  EXPECT_DOUBLE_EQ(e.ci_high - e.mean, mtp::kDefaultZ * e.std_error);
  EXPECT_THROW(mtp::summarize(std::vector<double>{1.0}), std::invalid_argument);
}
