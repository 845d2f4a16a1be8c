#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "nlpm/align.hpp"
#include "nlpm/bounds.hpp"
#include "nlpm/graph.hpp"
#include "nlpm/likelihood.hpp"
#include "nlpm/sampler.hpp"
#include "nlpm/synth.hpp"

namespace nlpm::cli {

namespace fs = std::filesystem;

namespace {

// Linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

nlohmann::json summarize(const std::vector<double>& v) {
  return {{"mean", mean(v)},
          {"sd", stddev(v)},
          {"q025", quantile(v, 0.025)},
          {"median", quantile(v, 0.5)},
          {"q975", quantile(v, 0.975)}};
}

void write_psi_draws(std::ostream& out, const RunMeta& meta, const LinkFunction& link,
                     const ChainSample& sample) {
  write_meta_comment(out, meta);
  out << "draw";
  for (const auto& name : link.param_names()) out << ',' << name;
  out << '\n';
  for (std::size_t d = 0; d < sample.psi_draws.size(); ++d) {
    out << d;
    for (double v : sample.psi_draws[d]) out << ',' << v;
    out << '\n';
  }
}

void write_positions(std::ostream& out, const RunMeta& meta, std::span<const Point> z,
                     std::span<const std::uint64_t> ids) {
  write_meta_comment(out, meta);
  out << "node,original_id,x,y\n";
  for (std::size_t i = 0; i < z.size(); ++i) {
    out << i << ',' << ids[i] << ',' << z[i].x << ',' << z[i].y << '\n';
  }
}

// Positions from a CSV keyed by file id, reordered to dense ids.
Positions positions_for(const PositionTable& table, std::span<const std::uint64_t> original_ids,
                        const std::string& source) {
  std::unordered_map<std::uint64_t, Point> by_id;
  for (std::size_t r = 0; r < table.ids.size(); ++r) by_id[table.ids[r]] = table.points[r];
  Positions z;
  z.reserve(original_ids.size());
  for (auto id : original_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw DataError(source + ": no position for node " + std::to_string(id));
    }
    z.push_back(it->second);
  }
  return z;
}

nlohmann::json space_json(const LinkFunction& link, const ParameterSpace& space) {
  nlohmann::json bounds = nlohmann::json::object();
  const auto names = link.param_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    bounds[names[k]] = {space.psi_bounds[k].lo, space.psi_bounds[k].hi};
  }
  return {{"link", to_string(link.kind())},
          {"S", space.S},
          {"gamma", space.gamma},
          {"prior_std_psi", space.prior_std_psi},
          {"prop_std_z", space.prop_std_z},
          {"prop_std_psi", space.prop_std_psi},
          {"bounds", bounds}};
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, const RunMeta& meta, std::ostream& out) {
  const auto link = args.model.make_link();
  const auto spec = args.synth.make_spec(args.model, args.seed);
  const auto sim = generate(spec, link);
  const fs::path dir(args.out_dir);

  {
    auto f = open_output(dir / "edges.txt");
    write_meta_comment(f, meta);
    write_edge_list(sim.network, f);
  }
  {
    auto f = open_output(dir / "positions.csv");
    write_meta_comment(f, meta);
    write_positions_csv(sim.positions, f);
  }
  nlohmann::json params = to_json(spec, link);
  params["meta"] = meta_json(meta);
  params["edges"] = sim.network.n_edges();
  params["density"] = sim.network.density();
  write_json(dir / "params.json", params);

  out << "simulated N=" << spec.N << " edges=" << sim.network.n_edges()
      << " density=" << sim.network.density() << " -> " << dir.string() << '\n';
  return 0;
}

int cmd_fit(const FitArgs& args, const RunMeta& meta, std::ostream& out) {
  const auto link = args.model.make_link();
  const auto space = args.model.make_space();
  auto config = args.sampler.make_config();
  config.store_z = true;
  if (args.sampler.threads > 0) set_num_threads(args.sampler.threads);

  const auto loaded = load_edge_list(args.edges);
  const auto& net = loaded.network;
  const fs::path dir(args.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const auto sample = run(net, link, space, config);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ReferenceConfig ref = map_draw(sample, net, link, space);
  std::optional<double> rmse_to_reference;
  if (!args.reference.empty()) {
    const auto table = read_positions(args.reference);
    ref = true_reference(positions_for(table, loaded.original_ids, args.reference));
  }
  const auto post_mean = aligned_posterior_mean(sample, ref);
  if (!args.reference.empty()) {
    rmse_to_reference = rmse(procrustes_align(post_mean, ref), ref.points);
  }

  if (!args.skip_z_draws) {
    auto f = open_output(dir / "z_draws.csv");
    write_meta_comment(f, meta);
    f << "draw,node,original_id,x,y\n";
    for (std::size_t d = 0; d < sample.z_draws.size(); ++d) {
      const auto& z = sample.z_draws[d];
      for (std::size_t i = 0; i < z.size(); ++i) {
        f << d << ',' << i << ',' << loaded.original_ids[i] << ',' << z[i].x << ',' << z[i].y
          << '\n';
      }
    }
  }
  {
    auto f = open_output(dir / "psi_draws.csv");
    write_psi_draws(f, meta, link, sample);
  }
  {
    auto f = open_output(dir / "posterior_mean_positions.csv");
    write_positions(f, meta, post_mean, loaded.original_ids);
  }
  write_json(dir / "id_map.json", id_map_json(loaded.original_ids));

  nlohmann::json s;
  s["meta"] = meta_json(meta);
  s["model"] = space_json(link, space);
  s["sampler"] = {{"mode", to_string(config.mode)},
                  {"M", config.M},
                  {"iterations", config.iterations},
                  {"burn_in", config.burn_in},
                  {"thin", config.thin},
                  {"adapt", config.adapt.enabled},
                  {"scan", config.scan == ScanOrder::Random ? "random" : "deterministic"}};
  s["network"] = {{"source", args.edges},
                  {"N", net.size()},
                  {"edges", net.n_edges()},
                  {"density", net.density()}};
  s["n_draws"] = sample.psi_draws.size();

  const auto names = link.param_names();
  nlohmann::json psi = nlohmann::json::object();
  nlohmann::json psi_acc = nlohmann::json::object();
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<double> v;
    v.reserve(sample.psi_draws.size());
    for (const auto& d : sample.psi_draws) v.push_back(d[k]);
    psi[names[k]] = summarize(v);
    psi_acc[names[k]] = sample.psi_acceptance[k];
  }
  s["psi"] = psi;
  const auto& za = sample.z_acceptance;
  s["acceptance"] = {
      {"z_mean", mean(za)},
      {"z_min", za.empty() ? 0.0 : *std::min_element(za.begin(), za.end())},
      {"z_max", za.empty() ? 0.0 : *std::max_element(za.begin(), za.end())},
      {"psi", psi_acc}};
  s["timing"] = {{"total_seconds", total},
                 {"mean_burn_in_sweep_seconds", sample.mean_burn_in_sweep_seconds()},
                 {"mean_sampling_sweep_seconds", sample.mean_sampling_sweep_seconds()},
                 {"seconds_per_z_update", sample.seconds_per_z_update()}};
  s["final_scales"] = {{"z_mean", mean(sample.final_scales.z)}, {"psi", sample.final_scales.psi}};
  s["alignment"] = {
      {"reference", ref.source == ReferenceConfig::Source::MapDraw ? "map-draw" : "file"},
      {"map_draw_index", ref.source == ReferenceConfig::Source::MapDraw
                             ? nlohmann::json(ref.draw_index)
                             : nlohmann::json(nullptr)}};
  if (rmse_to_reference) s["alignment"]["rmse_to_reference"] = *rmse_to_reference;
  write_json(dir / "summary.json", s);

  out << "fit " << to_string(config.mode) << " N=" << net.size() << " draws="
      << sample.psi_draws.size() << " seconds=" << total << " -> " << dir.string() << '\n';
  return 0;
}

int cmd_bounds(const BoundsArgs& args, const RunMeta& meta, std::ostream& out) {
  const auto link = args.model.make_link();
  const auto space = args.model.make_space();
  const ErgodicityConstants erg{args.C, args.tau};

  nlohmann::json j;
  j["meta"] = meta_json(meta);
  j["model"] = space_json(link, space);
  j["reports"] = nlohmann::json::array();
  if (args.b) {
    j["reports"].push_back(to_json(make_bound_report_at(args.N, *args.b, link, space, erg)));
  } else {
    for (auto M : args.M) {
      j["reports"].push_back(to_json(make_bound_report(args.N, M, link, space, erg)));
    }
  }

  int code = 0;
  if (args.certify) {
    CertificateConfig cc;
    cc.n_nodes = args.certify_n;
    cc.instances = args.instances;
    cc.proposals = args.proposals;
    cc.seed = args.seed;
    if (!args.b) cc.grids = args.M;
    const auto cert = certify_bounds(link, space, cc);
    const auto lemma = lemma1_certify(link, space, args.lemma_samples, args.seed);
    j["certificates"] = {{"N", cc.n_nodes},
                         {"grids", cc.grids},
                         {"bounds", to_json(cert)},
                         {"lemma1", to_json(lemma)},
                         {"passed", cert.violations() == 0 && lemma.violations == 0}};
    if (cert.violations() != 0 || lemma.violations != 0) code = 4;
  }

  if (args.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json(args.out, j);
  }
  return code;
}

int cmd_study1(const Study1Args& args, const RunMeta& meta, std::ostream& out) {
  const auto link = args.model.make_link();
  if (args.networks == 0) throw ConfigError("--networks must be positive");
  if (args.M.empty()) throw ConfigError("--M needs at least one value");

  std::ofstream csv;
  if (!args.out.empty()) {
    csv = open_output(args.out);
    write_meta_comment(csv, meta);
    csv << "network,seed,N,edges,M,exact_loglik,noisy_loglik,error\n";
  }

  std::map<std::uint32_t, std::vector<double>> errors;
  for (std::size_t r = 0; r < args.networks; ++r) {
    const std::uint64_t seed = args.seed + r;
    const auto sim = generate(args.synth.make_spec(args.model, seed), link);
    LatentState state{sim.positions, sim.params, std::nullopt};
    const double exact = exact_log_lik(state, sim.network, link);
    for (auto M : args.M) {
      state.rebuild_grid(sim.network, M, args.model.S);
      const double noisy = noisy_log_lik(state, sim.network, link);
      errors[M].push_back(noisy - exact);
      if (csv.is_open()) {
        csv << r << ',' << seed << ',' << sim.network.size() << ',' << sim.network.n_edges()
            << ',' << M << ',' << exact << ',' << noisy << ',' << noisy - exact << '\n';
      }
    }
  }

  nlohmann::json j;
  j["meta"] = meta_json(meta);
  j["networks"] = args.networks;
  j["N"] = args.synth.N;
  j["by_M"] = nlohmann::json::array();
  for (const auto& [M, e] : errors) {
    std::vector<double> abs_e(e.size());
    std::transform(e.begin(), e.end(), abs_e.begin(), [](double x) { return std::abs(x); });
    j["by_M"].push_back({{"M", M},
                         {"median_error", quantile(e, 0.5)},
                         {"mean_error", mean(e)},
                         {"mean_abs_error", mean(abs_e)},
                         {"fraction_negative",
                          static_cast<double>(std::count_if(e.begin(), e.end(),
                                                            [](double x) { return x < 0; })) /
                              static_cast<double>(e.size())}});
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_compare_fits(const CompareFitsArgs& args, const RunMeta& meta, std::ostream& out) {
  const fs::path a(args.reference_dir);
  const fs::path b(args.other_dir);
  const auto pa = read_positions(a / "posterior_mean_positions.csv");
  const auto pb = read_positions(b / "posterior_mean_positions.csv");
  const auto zb = positions_for(pb, pa.ids, (b / "posterior_mean_positions.csv").string());
  const auto aligned = procrustes_align(zb, pa.points);

  const auto ta = read_csv(a / "psi_draws.csv");
  const auto tb = read_csv(b / "psi_draws.csv");
  nlohmann::json psi = nlohmann::json::object();
  bool all_inside = true;
  for (std::size_t c = 1; c < ta.header.size(); ++c) {
    const auto& name = ta.header[c];
    const int cb = tb.column(name);
    if (cb < 0) throw DataError(b.string() + ": psi_draws.csv lacks column " + name);
    std::vector<double> va, vb;
    for (const auto& row : ta.rows) va.push_back(parse_double(row[c], "psi_draws.csv"));
    for (const auto& row : tb.rows) vb.push_back(parse_double(row[cb], "psi_draws.csv"));
    const double lo = quantile(va, 0.025);
    const double hi = quantile(va, 0.975);
    const double m = mean(vb);
    const bool inside = m >= lo && m <= hi;
    all_inside = all_inside && inside;
    psi[name] = {{"reference_q025", lo},
                 {"reference_q975", hi},
                 {"reference_mean", mean(va)},
                 {"other_mean", m},
                 {"inside", inside}};
  }

  nlohmann::json j;
  j["meta"] = meta_json(meta);
  j["reference"] = a.string();
  j["other"] = b.string();
  j["position_rmse"] = rmse(aligned, pa.points);
  j["psi"] = psi;
  j["psi_means_inside_reference_interval"] = all_inside;
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_bench(const BenchArgs& args, const RunMeta& meta, std::ostream& out) {
  const auto link = args.model.make_link();
  const auto space = args.model.make_space();
  if (args.sweeps == 0) throw ConfigError("--sweeps must be positive");
  if (args.threads > 0) set_num_threads(args.threads);

  std::ofstream file;
  if (!args.out.empty()) file = open_output(args.out);
  std::ostream& csv = args.out.empty() ? out : file;
  write_meta_comment(csv, meta);
  csv << "source,N,edges,mode,M,sweeps,mean_sweep_seconds,seconds_per_z_update\n";

  struct Case {
    std::string source;
    Network net;
  };
  std::vector<Case> cases;
  if (!args.edges.empty()) {
    cases.push_back({args.edges, load_edge_list(args.edges).network});
  } else {
    for (auto n : args.sizes) {
      auto opts = args.synth;
      opts.N = n;
      cases.push_back({"synthetic", generate(opts.make_spec(args.model, args.seed), link).network});
    }
  }

  for (const auto& c : cases) {
    for (const auto& mode_name : args.modes) {
      const Mode mode = mode_from_string(mode_name);
      const std::vector<std::uint32_t> grids =
          mode == Mode::Exact ? std::vector<std::uint32_t>{0} : args.M;
      for (auto M : grids) {
        SamplerConfig cfg;
        cfg.iterations = args.sweeps;
        cfg.burn_in = 0;
        cfg.mode = mode;
        cfg.M = mode == Mode::Exact ? 8 : M;
        cfg.seed = args.seed;
        cfg.store_z = false;
        const auto sample = run(c.net, link, space, cfg);
        csv << c.source << ',' << c.net.size() << ',' << c.net.n_edges() << ',' << mode_name
            << ',' << M << ',' << args.sweeps << ',' << sample.mean_sampling_sweep_seconds()
            << ',' << sample.seconds_per_z_update() << '\n';
        csv.flush();
      }
    }
  }
  return 0;
}

}  // namespace nlpm::cli
