#include <gtest/gtest.h>

#include "helpers.hpp"
#include "nlpm/likelihood.hpp"

using namespace nlpm;
using namespace nlpm::testing;

namespace {

struct Case {
  LinkFunction link;
  ParameterSpace space;
};

std::vector<Case> cases() {
  ParameterSpace hoff;
  hoff.psi_bounds = {{-2.0, 2.0}};
  return {{LinkFunction(LinkKind::TwoParamLogit), moderate_space()},
          {LinkFunction(LinkKind::HoffLogit), hoff}};
}

}  // namespace

TEST(ExactLikelihood, MatchesPairwiseOracle) {
  Rng rng(1);
  for (const auto& c : cases()) {
    for (std::size_t n : {2u, 7u, 20u, 90u}) {
      auto inst = random_instance(n, c.link, c.space, rng);
      const double got = exact_log_lik(inst.state, inst.net, c.link);
      const double want = oracle_exact_log_lik(inst.state.z, inst.state.psi, inst.net, c.link);
      EXPECT_LT(rel_diff(got, want), 1e-12) << n;
    }
  }
}

TEST(NoisyLikelihood, MatchesCentreOracle) {
  Rng rng(2);
  for (const auto& c : cases()) {
    for (std::uint32_t M : {1u, 4u, 9u, 32u}) {
      auto inst = random_instance(40, c.link, c.space, rng);
      inst.state.rebuild_grid(inst.net, M, c.space.S);
      const double got = noisy_log_lik(inst.state, inst.net, c.link);
      const double want =
          oracle_noisy_log_lik(inst.state.z, inst.state.psi, inst.net, c.link, M, c.space.S);
      EXPECT_LT(rel_diff(got, want), 1e-11) << M;
    }
  }
}

TEST(NoisyLikelihood, RequiresGrid) {
  Rng rng(3);
  const auto c = cases()[0];
  auto inst = random_instance(5, c.link, c.space, rng);
  EXPECT_THROW(noisy_log_lik(inst.state, inst.net, c.link), ConfigError);
  EXPECT_THROW(noisy_log_lr_z(inst.state, inst.net, c.link, 0, {0, 0}), ConfigError);
}

TEST(NoisyLikelihood, ConvergesToExactOnFineGrid) {
  Rng rng(4);
  const auto c = cases()[0];
  auto inst = random_instance(30, c.link, c.space, rng);
  inst.state.rebuild_grid(inst.net, 1u << 30, c.space.S);
  EXPECT_NEAR(noisy_log_lik(inst.state, inst.net, c.link),
              exact_log_lik(inst.state, inst.net, c.link), 1e-6);
}

TEST(LikelihoodRatio, ExactEqualsQuotient) {
  Rng rng(5);
  for (const auto& c : cases()) {
    for (int t = 0; t < 50; ++t) {
      auto inst = random_instance(2 + rng() % 19, c.link, c.space, rng);
      const auto i = static_cast<NodeId>(rng() % inst.state.z.size());
      const Point z_new = uniform_point(c.space.S, rng);
      auto moved = inst.state;
      moved.z[i] = z_new;
      const double q = std::exp(exact_log_lik(moved, inst.net, c.link) -
                                exact_log_lik(inst.state, inst.net, c.link));
      EXPECT_LT(rel_diff(exact_lr_z(inst.state, inst.net, c.link, i, z_new), q), 1e-10);

      auto psi_new = inst.state.psi;
      const std::size_t k = rng() % psi_new.size();
      psi_new[k] = std::uniform_real_distribution<double>(c.space.psi_bounds[k].lo,
                                                          c.space.psi_bounds[k].hi)(rng);
      auto reparam = inst.state;
      reparam.psi = psi_new;
      const double qp = std::exp(exact_log_lik(reparam, inst.net, c.link) -
                                 exact_log_lik(inst.state, inst.net, c.link));
      EXPECT_LT(rel_diff(exact_lr_psi(inst.state, inst.net, c.link, psi_new), qp), 1e-10);
    }
  }
}

TEST(LikelihoodRatio, NoisyPsiEqualsQuotient) {
  Rng rng(6);
  for (const auto& c : cases()) {
    for (int t = 0; t < 50; ++t) {
      auto inst = random_instance(2 + rng() % 19, c.link, c.space, rng);
      const std::uint32_t M = 1 + rng() % 12;
      inst.state.rebuild_grid(inst.net, M, c.space.S);
      auto psi_new = inst.state.psi;
      psi_new[0] += 0.3;
      auto reparam = inst.state;
      reparam.psi = psi_new;
      const double q = std::exp(noisy_log_lik(reparam, inst.net, c.link) -
                                noisy_log_lik(inst.state, inst.net, c.link));
      EXPECT_LT(rel_diff(noisy_lr_psi(inst.state, inst.net, c.link, psi_new), q), 1e-10);
    }
  }
}

TEST(LikelihoodRatio, NoisyLatentEqualsNodeConditionalQuotient) {
  Rng rng(7);
  for (const auto& c : cases()) {
    for (int t = 0; t < 50; ++t) {
      auto inst = random_instance(2 + rng() % 19, c.link, c.space, rng);
      const std::uint32_t M = 1 + rng() % 12;
      inst.state.rebuild_grid(inst.net, M, c.space.S);
      const auto i = static_cast<NodeId>(rng() % inst.state.z.size());
      const Point z_new = uniform_point(c.space.S, rng);
      const auto& s = inst.state;
      const double q =
          std::exp(oracle_noisy_node(s.z, i, z_new, s.psi, inst.net, c.link, M, c.space.S) -
                   oracle_noisy_node(s.z, i, s.z[i], s.psi, inst.net, c.link, M, c.space.S));
      EXPECT_LT(rel_diff(noisy_lr_z(s, inst.net, c.link, i, z_new), q), 1e-10);
    }
  }
}

TEST(LikelihoodRatio, IdentityMoveIsOne) {
  Rng rng(8);
  const auto c = cases()[0];
  auto inst = random_instance(12, c.link, c.space, rng);
  inst.state.rebuild_grid(inst.net, 5, c.space.S);
  EXPECT_EQ(exact_log_lr_z(inst.state, inst.net, c.link, 3, inst.state.z[3]), 0.0);
  EXPECT_EQ(noisy_log_lr_z(inst.state, inst.net, c.link, 3, inst.state.z[3]), 0.0);
  EXPECT_EQ(exact_log_lr_psi(inst.state, inst.net, c.link, inst.state.psi), 0.0);
}

TEST(Likelihood, ThreadCountDoesNotChangeResults) {
  Rng rng(9);
  const auto c = cases()[0];
  auto inst = random_instance(700, c.link, c.space, rng);
  inst.state.rebuild_grid(inst.net, 16, c.space.S);
  set_num_threads(1);
  const double e1 = exact_log_lik(inst.state, inst.net, c.link);
  const double n1 = noisy_log_lik(inst.state, inst.net, c.link);
  set_num_threads(4);
  const double e4 = exact_log_lik(inst.state, inst.net, c.link);
  const double n4 = noisy_log_lik(inst.state, inst.net, c.link);
  set_num_threads(1);
  EXPECT_EQ(e1, e4);
  EXPECT_EQ(n1, n4);
}
