#include <gtest/gtest.h>

#include "helpers.hpp"
#include "nlpm/sampler.hpp"

using namespace nlpm;
using namespace nlpm::testing;

namespace {

SamplerConfig small_config(Mode mode) {
  SamplerConfig c;
  c.iterations = 60;
  c.burn_in = 20;
  c.thin = 4;
  c.mode = mode;
  c.M = 6;
  c.seed = 99;
  return c;
}

}  // namespace

TEST(SamplerConfig, Validation) {
  auto c = small_config(Mode::Exact);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.n_draws(), 10u);
  c.burn_in = 60;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(Mode::Noisy);
  c.thin = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(Mode::Noisy);
  c.M = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(Mode::Exact);
  c.adapt.lo = 0.6;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(mode_from_string("noisy"), Mode::Noisy);
  EXPECT_THROW(mode_from_string("fast"), ConfigError);
}

TEST(AcceptProb, DetailedBalanceIdentity) {
  Rng rng(21);
  const LinkFunction link;
  const auto space = moderate_space();
  for (int t = 0; t < 200; ++t) {
    auto inst = random_instance(5, link, space, rng);
    const auto i = static_cast<NodeId>(rng() % 5);
    const Point a = inst.state.z[i];
    const Point b = propose_z(a, space.S, 0.5, rng).value;
    auto at_b = inst.state;
    at_b.z[i] = b;

    auto log_pi = [&](const LatentState& s) {
      return oracle_exact_log_lik(s.z, s.psi, inst.net, link) + log_prior_z(s.z[i], space);
    };
    const double fwd = log_pi(inst.state) + log_q_z(a, b, space.S, 0.5) +
                       log_accept_prob_z(inst.state, inst.net, link, space, i, b,
                                         log_q_ratio_z(a, b, space.S, 0.5), Mode::Exact);
    const double bwd = log_pi(at_b) + log_q_z(b, a, space.S, 0.5) +
                       log_accept_prob_z(at_b, inst.net, link, space, i, a,
                                         log_q_ratio_z(b, a, space.S, 0.5), Mode::Exact);
    EXPECT_NEAR(fwd, bwd, 1e-10 * std::max(1.0, std::abs(fwd)));
  }
}

TEST(AcceptProb, OutsideSupportIsRejected) {
  Rng rng(22);
  const LinkFunction link;
  const auto space = moderate_space();
  auto inst = random_instance(5, link, space, rng);
  EXPECT_EQ(accept_prob_z(inst.state, inst.net, link, space, 0, {2.0, 0.0}, 0.0, Mode::Exact),
            0.0);
  auto psi = inst.state.psi;
  psi[1] = 10.0;
  EXPECT_EQ(accept_prob_psi(inst.state, inst.net, link, space, psi, 0.0, Mode::Exact), 0.0);
}

TEST(AcceptProb, InUnitInterval) {
  Rng rng(23);
  const LinkFunction link;
  const auto space = moderate_space();
  for (int t = 0; t < 100; ++t) {
    auto inst = random_instance(8, link, space, rng);
    inst.state.rebuild_grid(inst.net, 4, space.S);
    const Point b = uniform_point(space.S, rng);
    for (auto mode : {Mode::Exact, Mode::Noisy}) {
      const double a = accept_prob_z(inst.state, inst.net, link, space, 2, b, 0.1, mode);
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
    }
  }
}

TEST(Adapt, GrowsShrinksAndCaps) {
  AdaptConfig w;
  const std::vector<double> acc{0.9, 0.1, 0.3, 0.9};
  const std::vector<double> std{1.0, 1.0, 1.0, 3.9};
  const auto out = adapt_proposals(acc, std, w, 4.0);
  EXPECT_DOUBLE_EQ(out[0], 1.25);
  EXPECT_DOUBLE_EQ(out[1], 0.8);
  EXPECT_DOUBLE_EQ(out[2], 1.0);
  EXPECT_DOUBLE_EQ(out[3], 4.0);
}

TEST(Sampler, SameSeedSameChain) {
  Rng rng(24);
  const LinkFunction link;
  const auto space = moderate_space();
  auto inst = random_instance(15, link, space, rng);
  for (auto mode : {Mode::Exact, Mode::Noisy}) {
    const auto a = run(inst.net, link, space, small_config(mode));
    const auto b = run(inst.net, link, space, small_config(mode));
    ASSERT_EQ(a.z_draws.size(), 10u);
    ASSERT_EQ(a.psi_draws.size(), 10u);
    EXPECT_EQ(a.z_draws, b.z_draws);
    EXPECT_EQ(a.psi_draws, b.psi_draws);
    auto other = small_config(mode);
    other.seed = 100;
    EXPECT_NE(run(inst.net, link, space, other).psi_draws, a.psi_draws);
  }
}

TEST(Sampler, DrawsStayInSupport) {
  Rng rng(25);
  const LinkFunction link;
  const auto space = moderate_space();
  auto inst = random_instance(12, link, space, rng);
  auto cfg = small_config(Mode::Noisy);
  cfg.iterations = 200;
  cfg.thin = 1;
  cfg.check_grid_every = 1;
  cfg.adapt.enabled = true;
  cfg.adapt.interval = 10;
  const auto out = run(inst.net, link, space, cfg);
  for (const auto& z : out.z_draws)
    for (const auto& p : z) ASSERT_TRUE(space.contains(p));
  for (const auto& psi : out.psi_draws) ASSERT_TRUE(space.contains(psi));
}

TEST(Sampler, InitialisationAndRestrictedUpdates) {
  Rng rng(26);
  const LinkFunction link;
  const auto space = moderate_space();
  auto inst = random_instance(6, link, space, rng);
  auto cfg = small_config(Mode::Exact);
  cfg.init_z = inst.state.z;
  cfg.init_psi = inst.state.psi;
  cfg.update_nodes = {2};
  cfg.update_psi = false;
  const auto out = run(inst.net, link, space, cfg);
  for (const auto& z : out.z_draws) {
    for (NodeId i = 0; i < 6; ++i) {
      if (i != 2) {
        EXPECT_EQ(z[i], inst.state.z[i]);
      }
    }
  }
  for (const auto& psi : out.psi_draws) EXPECT_EQ(psi, inst.state.psi);

  Sampler s(inst.net, link, space, cfg);
  EXPECT_EQ(s.state().z, inst.state.z);

  auto bad = cfg;
  bad.update_nodes = {6};
  EXPECT_THROW(run(inst.net, link, space, bad), ConfigError);
  bad = cfg;
  bad.init_psi = GlobalParams{0.0, 9.0};
  EXPECT_THROW(run(inst.net, link, space, bad), ConfigError);
}

TEST(Sampler, RecordsDecisionsAndTiming) {
  Rng rng(27);
  const LinkFunction link;
  const auto space = moderate_space();
  auto inst = random_instance(7, link, space, rng);
  auto cfg = small_config(Mode::Noisy);
  cfg.record_decisions = true;
  cfg.store_z = false;
  const auto out = run(inst.net, link, space, cfg);
  EXPECT_EQ(out.decisions.size(), cfg.iterations * (7 + 2));
  EXPECT_TRUE(out.z_draws.empty());
  EXPECT_EQ(out.psi_draws.size(), cfg.n_draws());
  EXPECT_EQ(out.burn_in_sweep_seconds.size(), cfg.burn_in);
  EXPECT_EQ(out.sampling_sweep_seconds.size(), cfg.iterations - cfg.burn_in);
  EXPECT_EQ(out.z_updates, cfg.iterations * 7);
  EXPECT_EQ(out.z_acceptance.size(), 7u);
  for (double a : out.z_acceptance) {
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Sampler, PriorDraws) {
  auto space = moderate_space();
  space.S = 0.5;
  Rng rng(28);
  const auto z = draw_prior_positions(5000, space, rng);
  double mean_x = 0.0;
  for (const auto& p : z) {
    ASSERT_TRUE(space.contains(p));
    mean_x += p.x / 5000.0;
  }
  EXPECT_NEAR(mean_x, 0.0, 0.02);
}
