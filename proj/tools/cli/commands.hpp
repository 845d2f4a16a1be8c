#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/io.hpp"
#include "cli/options.hpp"

namespace nlpm::cli {

struct SimulateArgs {
  ModelOptions model;
  SynthOptions synth;
  std::uint64_t seed = 1;
  std::string out_dir;
};

struct FitArgs {
  ModelOptions model;
  SamplerOptions sampler;
  std::string edges;
  std::string out_dir;
  std::string reference;  ///< optional positions CSV used as alignment target
  bool skip_z_draws = false;
};

struct BoundsArgs {
  ModelOptions model;
  std::size_t N = 200;
  std::vector<std::uint32_t> M{8};
  std::optional<double> b;
  double C = 1.0;
  double tau = 0.99;
  bool certify = false;
  std::size_t certify_n = 6;
  std::size_t instances = 10;
  std::size_t proposals = 1000;
  std::size_t lemma_samples = 100000;
  std::uint64_t seed = 2024;
  std::string out;  ///< empty: stdout
};

struct Study1Args {
  ModelOptions model;
  SynthOptions synth;
  std::size_t networks = 100;
  std::vector<std::uint32_t> M{8, 12, 16};
  std::uint64_t seed = 1;
  std::string out;  ///< per-network CSV; summary JSON goes to stdout
};

struct CompareFitsArgs {
  std::string reference_dir;
  std::string other_dir;
};

struct BenchArgs {
  ModelOptions model;
  SynthOptions synth;
  std::vector<std::uint32_t> sizes{200};
  std::vector<std::string> modes{"exact", "noisy"};
  std::vector<std::uint32_t> M{8};
  std::size_t sweeps = 20;
  std::uint64_t seed = 1;
  std::string edges;  ///< benchmark this file instead of synthetic sizes
  std::string out;    ///< empty: stdout
  int threads = 0;
};

int cmd_simulate(const SimulateArgs& args, const RunMeta& meta, std::ostream& out);
int cmd_fit(const FitArgs& args, const RunMeta& meta, std::ostream& out);
int cmd_bounds(const BoundsArgs& args, const RunMeta& meta, std::ostream& out);
int cmd_study1(const Study1Args& args, const RunMeta& meta, std::ostream& out);
int cmd_compare_fits(const CompareFitsArgs& args, const RunMeta& meta, std::ostream& out);
int cmd_bench(const BenchArgs& args, const RunMeta& meta, std::ostream& out);

}  // namespace nlpm::cli
