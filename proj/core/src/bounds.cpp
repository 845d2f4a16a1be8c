#include "nlpm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "nlpm/likelihood.hpp"
#include "nlpm/sampler.hpp"

namespace nlpm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundValue from_log(double log_value) {
  return {log_value, std::exp(log_value), log_value >= 0.0};
}

// log(1 - e^{-x}) for x >= 0; -inf at x = 0.
double log_one_minus_exp_neg(double x) {
  if (x <= 0.0) return -kInf;
  if (std::isinf(x)) return 0.0;
  return std::log(-std::expm1(-x));
}

// x * y where a zero factor wins over an infinite one.
double scaled(double x, double y) { return x == 0.0 || y == 0.0 ? 0.0 : x * y; }

double half_pairs(std::size_t N) {
  const double n = static_cast<double>(N);
  return 0.5 * n * (n - 1.0);
}

// log of max/min mass of a truncated N(c, v^2) random walk on an interval of
// width w: the exact bound on its proposal-density ratio.
double log_mass_ratio(double w, double v) {
  const Interval window{0.0, w};
  return log_truncated_mass(0.5 * w, window, v) - log_truncated_mass(0.0, window, v);
}

double max_width(const ParameterSpace& space) {
  double w = 0.0;
  for (const auto& iv : space.psi_bounds) w = std::max(w, iv.width());
  return w;
}

Point uniform_point(double S, Rng& rng) {
  std::uniform_real_distribution<double> u(-S, S);
  const double x = u(rng);
  return {x, u(rng)};
}

GlobalParams uniform_psi(const ParameterSpace& space, Rng& rng) {
  GlobalParams psi;
  for (const auto& iv : space.psi_bounds) {
    psi.push_back(std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng));
  }
  return psi;
}

bool exceeds(double error, const BoundValue& bound) {
  if (std::isinf(bound.value)) return false;
  return error > bound.value * (1.0 + 1e-9) + 1e-300;
}

}  // namespace

ChiConstants chi_constants(std::size_t N, const LinkConstants& lc) {
  const double n1 = static_cast<double>(N) - 1.0;
  return {2.0 * std::sqrt(2.0) * lc.lipschitz * n1 / lc.p_lo, 2.0 * n1,
          lc.lipschitz * std::sqrt(2.0) / (1.0 - lc.p_hi)};
}

double eta(double b, std::size_t N, const LinkConstants& lc) {
  if (b == 0.0) return 0.0;
  const auto chi = chi_constants(N, lc);
  return scaled(chi.chi1, b) + chi.chi2 * std::log1p(scaled(chi.chi3, b));
}

double log_ratio_base(const LinkConstants& lc) {
  return std::log1p(-lc.p_lo) + std::log(lc.p_hi) - std::log1p(-lc.p_hi) - std::log(lc.p_lo);
}

LikelihoodRatioBounds theorem2_bounds(double b, std::size_t N, const LinkConstants& lc) {
  const double e = eta(b, N, lc);
  const double lb = log_ratio_base(lc);
  const double n = static_cast<double>(N);
  return {from_log((n - 1.0) * lb + log_one_minus_exp_neg(e)),
          from_log(half_pairs(N) * lb + log_one_minus_exp_neg(0.5 * n * e))};
}

RatioConstants ratio_constants(const ParameterSpace& space) {
  RatioConstants r{};
  double log_kpi = 0.0;
  double log_kq = 0.0;
  for (const auto& iv : space.psi_bounds) {
    const double far = std::max(std::abs(iv.lo), std::abs(iv.hi));
    const double near = iv.contains(0.0) ? 0.0 : std::min(std::abs(iv.lo), std::abs(iv.hi));
    const double s2 = space.prior_std_psi * space.prior_std_psi;
    log_kpi = std::max(log_kpi, (far * far - near * near) / (2.0 * s2));
    const double w = iv.width();
    const double v2 = space.prop_std_psi * space.prop_std_psi;
    log_kq = std::max({log_kq, w * w / (2.0 * v2), log_mass_ratio(w, space.prop_std_psi)});
  }
  r.log_kappa_pi = log_kpi;
  r.log_kappa_q = log_kq;
  r.log_varkappa_pi = space.S * space.S / (space.gamma * space.gamma);
  const double side = 2.0 * space.S;
  r.log_varkappa_q = std::max(side * side / (space.prop_std_z * space.prop_std_z),
                              2.0 * log_mass_ratio(side, space.prop_std_z));
  return r;
}

AcceptanceBounds corollary2_bounds(double b, std::size_t N, const RatioConstants& ratios,
                                   const LinkConstants& lc) {
  const double e = eta(b, N, lc);
  const double lb = log_ratio_base(lc);
  const double n = static_cast<double>(N);
  const double psi = ratios.log_kappa_pi + ratios.log_kappa_q + (n - 1.0) * lb +
                     log_one_minus_exp_neg(e);
  const double z = ratios.log_varkappa_pi + ratios.log_varkappa_q + half_pairs(N) * lb +
                   log_one_minus_exp_neg(0.5 * n * e);
  return {from_log(psi), from_log(z)};
}

long ergodicity_lambda(const ErgodicityConstants& e) {
  if (!(e.C > 0.0) || !std::isfinite(e.C)) throw ConfigError("ergodicity constant C must be > 0");
  if (!(e.tau > 0.0 && e.tau < 1.0)) throw ConfigError("ergodicity rate tau must lie in (0, 1)");
  const double raw = std::log(1.0 / e.C) / std::log(e.tau);
  return std::max(0L, static_cast<long>(std::ceil(raw - 1e-12)));
}

BoundValue theorem3_bound(double b, std::size_t N, const RatioConstants& ratios,
                          const LinkConstants& lc, const ErgodicityConstants& e) {
  const long lambda = ergodicity_lambda(e);
  const double lam = static_cast<double>(lambda);
  const double prefactor = lam + e.C * std::pow(e.tau, lam) / (1.0 - e.tau);
  const double ratio = std::max(ratios.log_kappa_q + ratios.log_kappa_pi,
                                ratios.log_varkappa_q + ratios.log_varkappa_pi);
  const double n = static_cast<double>(N);
  return from_log(std::log(prefactor) + ratio + (n - 1.0) * log_ratio_base(lc) +
                  log_one_minus_exp_neg(0.5 * n * eta(b, N, lc)));
}

BoundReport make_bound_report_at(std::size_t N, double b, const LinkFunction& link,
                                 const ParameterSpace& space, const ErgodicityConstants& e) {
  if (N < 2) throw ConfigError("bounds need at least two nodes");
  if (!(b >= 0.0)) throw ConfigError("box side must be non-negative");
  space.validate(link);

  BoundReport r;
  r.n_nodes = N;
  r.n_params = link.n_params();
  r.b = b;
  r.link = derived_constants(link, space);
  r.ratios = ratio_constants(space);
  r.chi = chi_constants(N, r.link);
  r.ergodicity = e;
  r.log_base = log_ratio_base(r.link);
  r.eta = eta(b, N, r.link);

  const auto t2 = theorem2_bounds(b, N, r.link);
  r.theorem2_z = t2.z;
  r.theorem2_psi = t2.psi;
  const auto c2 = corollary2_bounds(b, N, r.ratios, r.link);
  r.corollary2_z = c2.z;
  r.corollary2_psi = c2.psi;
  r.lambda = ergodicity_lambda(e);
  r.theorem3 = theorem3_bound(b, N, r.ratios, r.link, e);

  r.R = N + r.n_params;
  const double side = 2.0 * space.S;
  const double gap = std::max(std::log(side * side) + c2.z.log_value,
                              std::log(max_width(space)) + c2.psi.log_value);
  r.kernel_gap = from_log(gap);
  r.sweep_kernel_gap = from_log(std::log(static_cast<double>(r.R)) + gap);
  return r;
}

BoundReport make_bound_report(std::size_t N, std::uint32_t M, const LinkFunction& link,
                              const ParameterSpace& space, const ErgodicityConstants& e) {
  if (M == 0) throw ConfigError("grid resolution M must be positive");
  auto r = make_bound_report_at(N, 2.0 * space.S / M, link, space, e);
  r.M = M;
  return r;
}

namespace {

nlohmann::json bound_json(const BoundValue& v) {
  nlohmann::json j;
  j["log_value"] = std::isfinite(v.log_value) ? nlohmann::json(v.log_value)
                                              : nlohmann::json(v.log_value > 0 ? "inf" : "-inf");
  j["value"] = std::isfinite(v.value) ? nlohmann::json(v.value) : nlohmann::json("inf");
  j["vacuous"] = v.vacuous;
  return j;
}

}  // namespace

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["N"] = r.n_nodes;
  j["K"] = r.n_params;
  if (r.M != 0) j["M"] = r.M;
  j["b"] = r.b;
  j["constants"] = {
      {"p_lower", r.link.p_lo},
      {"p_upper", r.link.p_hi},
      {"lipschitz", r.link.lipschitz},
      {"log_kappa_pi", r.ratios.log_kappa_pi},
      {"log_varkappa_pi", r.ratios.log_varkappa_pi},
      {"log_kappa_q", r.ratios.log_kappa_q},
      {"log_varkappa_q", r.ratios.log_varkappa_q},
      {"chi1", r.chi.chi1},
      {"chi2", r.chi.chi2},
      {"chi3", r.chi.chi3},
      {"log_base", r.log_base},
  };
  j["eta"] = r.eta;
  j["theorem2"] = {{"z", bound_json(r.theorem2_z)}, {"psi", bound_json(r.theorem2_psi)}};
  j["corollary2"] = {{"z", bound_json(r.corollary2_z)}, {"psi", bound_json(r.corollary2_psi)}};
  j["theorem3"] = bound_json(r.theorem3);
  j["ergodicity"] = {{"C", r.ergodicity.C}, {"tau", r.ergodicity.tau}, {"lambda", r.lambda}};
  j["R"] = r.R;
  j["kernel_gap"] = bound_json(r.kernel_gap);
  j["sweep_kernel_gap"] = bound_json(r.sweep_kernel_gap);
  return j;
}

Lemma1Report lemma1_certify(const LinkFunction& link, const ParameterSpace& space,
                            std::size_t samples, std::uint64_t seed) {
  space.validate(link);
  const auto lc = derived_constants(link, space);
  const double dmax = space.max_distance();
  const double log_1m_pu = std::log1p(-lc.p_hi);
  Rng rng(seed);
  std::uniform_real_distribution<double> ud(0.0, dmax);

  Lemma1Report rep;
  rep.samples = samples;
  rep.min_slack = kInf;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto psi = uniform_psi(space, rng);
    const double d1 = ud(rng);
    // Every 16th sample has d1 = d2, where both sandwiches are tight.
    const double d2 = s % 16 == 0 ? d1 : ud(rng);
    const double delta = std::abs(d2 - d1);
    const auto l1 = link.log_probs(d1, psi);
    const auto l2 = link.log_probs(d2, psi);

    const double f = l2.log_p - l1.log_p;
    const double fb = scaled(lc.lipschitz / lc.p_lo, delta);
    const double g = l2.log_1mp - l1.log_1mp;
    const double gb = std::log(1.0 - lc.p_hi + lc.lipschitz * delta) - log_1m_pu;

    const double tol_f = 1e-12 * (1.0 + std::abs(f));
    const double tol_g = 1e-12 * (1.0 + std::abs(g));
    const double slacks[] = {fb - f, f + fb, gb - g, g + gb};
    const double tols[] = {tol_f, tol_f, tol_g, tol_g};
    for (int k = 0; k < 4; ++k) {
      if (slacks[k] < -tols[k]) ++rep.violations;
      rep.min_slack = std::min(rep.min_slack, slacks[k]);
    }
  }
  return rep;
}

CertificateReport certify_bounds(const LinkFunction& link, const ParameterSpace& space,
                                 const CertificateConfig& cfg) {
  space.validate(link);
  if (cfg.n_nodes < 2) throw ConfigError("certificates need at least two nodes");
  if (cfg.n_nodes > 8) throw ConfigError("certificates are limited to N <= 8");
  const std::size_t N = cfg.n_nodes;
  const std::size_t K = link.n_params();
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  CertificateReport rep;
  for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
    LatentState state;
    state.psi = uniform_psi(space, rng);
    for (std::size_t i = 0; i < N; ++i) state.z.push_back(uniform_point(space.S, rng));
    std::vector<Edge> edges;
    for (NodeId i = 0; i < N; ++i) {
      for (NodeId j = i + 1; j < N; ++j) {
        if (unit(rng) < link.prob(distance(state.z[i], state.z[j]), state.psi)) {
          edges.push_back({i, j});
        }
      }
    }
    const auto net = Network::from_edges(N, edges);

    for (const auto M : cfg.grids) {
      state.rebuild_grid(net, M, space.S);
      const auto bounds = make_bound_report(N, M, link, space);

      for (std::size_t p = 0; p < cfg.proposals; ++p) {
        const bool local = p % 2 == 0;

        const auto i = static_cast<NodeId>(rng() % N);
        const Point from = state.z[i];
        const Point to = local ? propose_z(from, space.S, space.prop_std_z, rng).value
                               : uniform_point(space.S, rng);
        const double lr_e = exact_lr_z(state, net, link, i, to);
        const double lr_n = noisy_lr_z(state, net, link, i, to);
        const double err_z = std::abs(lr_e - lr_n);
        rep.max_lr_z_error = std::max(rep.max_lr_z_error, err_z);
        if (exceeds(err_z, bounds.theorem2_z)) ++rep.lr_z_violations;

        const double lq_z = log_q_ratio_z(from, to, space.S, space.prop_std_z);
        const double a_e = accept_prob_z(state, net, link, space, i, to, lq_z, Mode::Exact);
        const double a_n = accept_prob_z(state, net, link, space, i, to, lq_z, Mode::Noisy);
        const double acc_z = std::abs(a_e - a_n);
        rep.max_acc_z_error = std::max(rep.max_acc_z_error, acc_z);
        if (exceeds(acc_z, bounds.corollary2_z)) ++rep.acc_z_violations;

        const std::size_t k = rng() % K;
        const auto& iv = space.psi_bounds[k];
        GlobalParams psi_new = state.psi;
        psi_new[k] = local ? propose_psi(state.psi[k], iv, space.prop_std_psi, rng).value
                           : std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
        const double plr_e = exact_lr_psi(state, net, link, psi_new);
        const double plr_n = noisy_lr_psi(state, net, link, psi_new);
        const double err_psi = std::abs(plr_e - plr_n);
        rep.max_lr_psi_error = std::max(rep.max_lr_psi_error, err_psi);
        if (exceeds(err_psi, bounds.theorem2_psi)) ++rep.lr_psi_violations;

        const double lq_psi =
            log_q_ratio_psi(state.psi[k], psi_new[k], iv, space.prop_std_psi);
        const double b_e =
            accept_prob_psi(state, net, link, space, psi_new, lq_psi, Mode::Exact);
        const double b_n =
            accept_prob_psi(state, net, link, space, psi_new, lq_psi, Mode::Noisy);
        const double acc_psi = std::abs(b_e - b_n);
        rep.max_acc_psi_error = std::max(rep.max_acc_psi_error, acc_psi);
        if (exceeds(acc_psi, bounds.corollary2_psi)) ++rep.acc_psi_violations;

        rep.checks += 4;
      }
    }
  }
  return rep;
}

nlohmann::json to_json(const Lemma1Report& r) {
  return {{"samples", r.samples},
          {"violations", r.violations},
          {"min_log_slack", r.min_slack}};
}

nlohmann::json to_json(const CertificateReport& r) {
  return {{"checks", r.checks},
          {"violations",
           {{"lr_z", r.lr_z_violations},
            {"lr_psi", r.lr_psi_violations},
            {"acc_z", r.acc_z_violations},
            {"acc_psi", r.acc_psi_violations}}},
          {"max_error",
           {{"lr_z", r.max_lr_z_error},
            {"lr_psi", r.max_lr_psi_error},
            {"acc_z", r.max_acc_z_error},
            {"acc_psi", r.max_acc_psi_error}}}};
}

}  // namespace nlpm
