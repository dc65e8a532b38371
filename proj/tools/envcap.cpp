// Copyright (c) 2026 the envcap developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * Command-line front end.  One binary, subcommand style; every run is
 * reproducible from its argument list plus the seed (--seed beats the
 * ENVCAP_SEED environment variable, which beats the default 0), and
 * identical invocations write byte-identical artifacts.
 *
 * Exit codes: 0 success, 2 validation error, 3 numerical failure.
 */

#include "envcap/capacity.hpp"
#include "envcap/channels.hpp"
#include "envcap/experiments.hpp"
#include "envcap/io.hpp"
#include "envcap/two_qubit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace envcap;

struct Common {
  std::string gate;
  std::string file;
  std::string out;
  std::string format = "json";
  OptimizerConfig cfg;
};

std::uint64_t env_seed() {
  const char* raw = std::getenv("ENVCAP_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    return static_cast<std::uint64_t>(std::stoull(raw));
  } catch (const std::exception&) {
    throw std::invalid_argument("ENVCAP_SEED is not a non-negative integer");
  }
}

void add_common(CLI::App* cmd, Common& c, bool with_gate = true) {
  if (with_gate) {
    cmd->add_option("--gate", c.gate, "gate registry spec (see `envcap gates`)");
    cmd->add_option("--file", c.file, "interchange-format matrix file");
  }
  cmd->add_option("--restarts", c.cfg.restarts, "random search restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.cfg.seed, "RNG seed (beats ENVCAP_SEED)");
  cmd->add_option("--threads", c.cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--ensemble", c.cfg.ensemble_size, "ensemble members (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", c.out, "write output to this path instead of stdout");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

BipartiteUnitary resolve_gate(const Common& c) {
  if (!c.gate.empty() && !c.file.empty())
    throw std::invalid_argument("give either --gate or --file, not both");
  if (!c.gate.empty()) return make_gate(c.gate);
  if (!c.file.empty()) return make_gate("file:" + c.file);
  throw std::invalid_argument("a gate is required (--gate or --file)");
}

void emit(const Common& c, const std::string& content) {
  if (c.out.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    write_text_file(c.out, content);
  }
}

void emit_estimate(const Common& c, const CapacityEstimate& est) {
  if (c.format == "csv")
    throw std::invalid_argument("capacity estimates have no CSV rendering");
  emit(c, c.format == "json" ? to_json(est) : to_text(est));
}

std::vector<double> linspace(double start, double stop, long count) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    xs.push_back(start);
    return xs;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (long i = 0; i < count; ++i) xs.push_back(start + step * static_cast<double>(i));
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"environment-assisted channel capacity toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::uint64_t default_seed = 0;
  try {
    default_seed = env_seed();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  const int default_threads =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  const auto fresh_common = [&] {
    Common c;
    c.cfg.seed = default_seed;
    c.cfg.threads = default_threads;
    return c;
  };

  // chi: passive-helper capacity, role-swapped variant via --sender H.
  Common c_chi = fresh_common();
  std::string chi_sender = "A";
  auto* chi = app.add_subcommand("chi", "product-helper Holevo capacity of a gate");
  add_common(chi, c_chi);
  chi->add_option("--sender", chi_sender, "which leg the message enters (A or H)")
      ->check(CLI::IsMember({"A", "H"}));
  chi->callback([&] {
    const auto w = resolve_gate(c_chi);
    const auto est = chi_role_swapped(w, chi_sender == "A" ? Sender::A : Sender::H, c_chi.cfg);
    emit_estimate(c_chi, est);
  });

  // minent: minimum output entropy over product inputs.
  Common c_min = fresh_common();
  auto* minent = app.add_subcommand("minent", "minimum output entropy over product inputs");
  add_common(minent, c_min);
  minent->callback([&] { emit_estimate(c_min, min_output_entropy(resolve_gate(c_min), c_min.cfg)); });

  // controlled: capacity of a block-controlled interaction.
  Common c_ctrl = fresh_common();
  bool ctrl_entangled = false;
  auto* controlled = app.add_subcommand("controlled", "capacity of controlled unitary blocks");
  add_common(controlled, c_ctrl, /*with_gate=*/false);
  controlled->add_option("--file", c_ctrl.file, "JSON file with the unitary blocks")->required();
  controlled->add_flag("--entangled", ctrl_entangled, "helper may entangle the environment");
  controlled->callback([&] {
    const auto blocks = blocks_from_json(read_text_file(c_ctrl.file));
    emit_estimate(c_ctrl, controlled_capacity(blocks, ctrl_entangled, c_ctrl.cfg));
  });

  // conf: conferencing-encoder capacity; --two-qubit-exact emits the
  // constructive one-bit code instead of running the search.
  Common c_conf = fresh_common();
  bool conf_exact = false;
  auto* conf = app.add_subcommand("conf", "conferencing-encoder product capacity");
  add_common(conf, c_conf);
  conf->add_flag("--two-qubit-exact", conf_exact, "emit the constructive two-qubit code");
  conf->callback([&] {
    const auto w = resolve_gate(c_conf);
    if (conf_exact) {
      const auto code = conferencing_code_two_qubit(w);
      if (c_conf.format == "csv")
        throw std::invalid_argument("conferencing codes have no CSV rendering");
      emit(c_conf, c_conf.format == "json" ? to_json(code) : to_text(code));
      return;
    }
    emit_estimate(c_conf, conf_product_capacity(w, c_conf.cfg));
  });

  // decompose: canonical two-qubit angles.
  Common c_dec = fresh_common();
  auto* decompose = app.add_subcommand("decompose", "canonical two-qubit interaction angles");
  add_common(decompose, c_dec);
  decompose->callback([&] {
    const auto p = kraus_cirac_angles(resolve_gate(c_dec));
    if (c_dec.format == "csv") throw std::invalid_argument("angles have no CSV rendering");
    emit(c_dec, c_dec.format == "json" ? to_json(p) : to_text(p));
  });

  // augment: controlled-shift augmentation, then an evaluand.
  Common c_aug = fresh_common();
  std::string aug_eval = "conf";
  auto* augment = app.add_subcommand("augment", "augment a square gate, then evaluate");
  add_common(augment, c_aug);
  augment->add_option("--eval", aug_eval, "evaluand on the augmented gate")
      ->check(CLI::IsMember({"chi", "conf", "minent"}));
  augment->callback([&] {
    const auto wa = shor_augment(resolve_gate(c_aug));
    CapacityEstimate est;
    if (aug_eval == "chi") {
      est = chi_H_tensor(wa, c_aug.cfg);
    } else if (aug_eval == "conf") {
      est = conf_product_capacity(wa, c_aug.cfg);
    } else {
      est = min_output_entropy(wa, c_aug.cfg);
    }
    emit_estimate(c_aug, est);
  });

  // bounds: closed-form point values.
  Common c_bnd = fresh_common();
  long long bnd_dim = 3;
  long long bnd_dim_b = 0;
  double bnd_epsilon = -1.0;
  auto* bounds = app.add_subcommand("bounds", "closed-form bound values at a point");
  add_common(bounds, c_bnd, /*with_gate=*/false);
  bounds->add_option("--dim", bnd_dim, "input dimension d")->check(CLI::Range(2LL, 1000000LL));
  bounds->add_option("--dim-b", bnd_dim_b, "output dimension for the continuity bound");
  bounds->add_option("--epsilon", bnd_epsilon, "evaluation point for the epsilon curves");
  bounds->callback([&] {
    const auto d = static_cast<Index>(bnd_dim);
    const double e0 = uncertainty_epsilon0(d);
    nlohmann::ordered_json j;
    j["dim"] = bnd_dim;
    j["uncertainty_bound"] = uncertainty_bound(d);
    j["uncertainty_epsilon0"] = e0;
    j["f_at_epsilon0"] = uncertainty_f(e0, d);
    j["conf_lower_bound"] = conf_lower_bound(d, d);
    if (bnd_epsilon >= 0.0) {
      j["epsilon"] = bnd_epsilon;
      j["f_epsilon"] = uncertainty_f(bnd_epsilon, d);
      j["continuity_bound"] =
          continuity_bound(bnd_epsilon, bnd_dim_b > 0 ? static_cast<Index>(bnd_dim_b) : d);
    }
    if (c_bnd.format == "csv") throw std::invalid_argument("bounds have no CSV rendering");
    if (c_bnd.format == "json") {
      emit(c_bnd, j.dump(2) + "\n");
    } else {
      std::string text;
      for (const auto& [key, value] : j.items())
        text += key + ": " + value.dump() + "\n";
      emit(c_bnd, text);
    }
  });

  // experiment: scripted reproductions.
  Common c_exp = fresh_common();
  std::string exp_name;
  long long exp_d = 2;
  long long exp_samples = 0;
  auto* experiment = app.add_subcommand("experiment", "run a scripted reproduction");
  add_common(experiment, c_exp, /*with_gate=*/false);
  experiment
      ->add_option("name", exp_name, "experiment name")
      ->required()
      ->check(CLI::IsMember({"superadditivity-qutrit", "superadditivity-weyl", "conjugate-pair",
                             "minent-stats", "ancilla-equality"}));
  experiment->add_option("--d", exp_d, "leg dimension where applicable")
      ->check(CLI::Range(2LL, 3LL));
  experiment->add_option("--samples", exp_samples, "sample count where applicable")
      ->check(CLI::PositiveNumber);
  experiment->callback([&] {
    ExperimentReport rep;
    if (exp_name == "superadditivity-qutrit") {
      rep = superadditivity_qutrit(c_exp.cfg);
    } else if (exp_name == "superadditivity-weyl") {
      rep = superadditivity_weyl(static_cast<Index>(exp_d), c_exp.cfg);
    } else if (exp_name == "conjugate-pair") {
      rep = conjugate_pair_conferencing(static_cast<Index>(exp_d), c_exp.cfg.seed, c_exp.cfg);
    } else if (exp_name == "minent-stats") {
      rep = haar_min_entropy_stats(static_cast<Index>(exp_d),
                                   exp_samples > 0 ? static_cast<int>(exp_samples) : 100,
                                   c_exp.cfg.seed, c_exp.cfg);
    } else {
      rep = ancilla_equality_sweep(exp_samples > 0 ? static_cast<int>(exp_samples) : 50,
                                   c_exp.cfg.seed, c_exp.cfg);
    }
    if (c_exp.format == "csv") {
      if (rep.samples.empty())
        throw std::invalid_argument("this experiment has no per-sample data for CSV");
      emit(c_exp, histogram_csv(rep.name, rep.samples));
    } else {
      emit(c_exp, c_exp.format == "json" ? to_json(rep) : to_text(rep));
    }
    if (!rep.pass) exit_code = 3;
  });

  // capacity-n: finite-copy lower bounds.
  Common c_fin = fresh_common();
  long long fin_n = 1;
  bool fin_entangled = false;
  auto* capn = app.add_subcommand("capacity-n", "finite-copy capacity lower bound");
  add_common(capn, c_fin);
  capn->add_option("--n", fin_n, "number of gate copies")->check(CLI::Range(1LL, 2LL));
  capn->add_flag("--entangled", fin_entangled, "helper may entangle across copies");
  capn->callback([&] {
    const auto w = resolve_gate(c_fin);
    emit_estimate(c_fin, finite_n_capacity(w, static_cast<int>(fin_n),
                                           fin_entangled ? Helper::entangled : Helper::separable,
                                           c_fin.cfg));
  });

  // sweep: closed-form curves as CSV.
  Common c_swp = fresh_common();
  c_swp.format = "csv";
  std::string swp_curve;
  std::string swp_grid;
  long long swp_dim = 3;
  auto* sweep = app.add_subcommand("sweep", "evaluate a closed-form curve over a grid");
  add_common(sweep, c_swp, /*with_gate=*/false);
  sweep->add_option("--curve", swp_curve, "curve name")
      ->required()
      ->check(CLI::IsMember({"cq-capacity", "uncertainty-f", "uncertainty-constant"}));
  sweep->add_option("--grid", swp_grid, "start:stop:count")->required();
  sweep->add_option("--dim", swp_dim, "dimension for the uncertainty curves")
      ->check(CLI::Range(2LL, 1000000LL));
  sweep->callback([&] {
    if (c_swp.format != "csv") throw std::invalid_argument("sweep output is CSV only");
    double start = 0.0;
    double stop = 0.0;
    long long count = 0;
    if (std::sscanf(swp_grid.c_str(), "%lf:%lf:%lld", &start, &stop, &count) != 3)
      throw std::invalid_argument("grid must be start:stop:count");
    if (count < 1) throw std::invalid_argument("grid must contain at least one point");
    const auto xs = linspace(start, stop, static_cast<long>(count));
    std::vector<double> ys;
    ys.reserve(xs.size());
    std::string header_x;
    std::string header_y;
    const auto d = static_cast<Index>(swp_dim);
    if (swp_curve == "cq-capacity") {
      header_x = "u";
      header_y = "capacity_bits";
      for (const double x : xs) ys.push_back(cq_capacity_closed_form(x));
    } else if (swp_curve == "uncertainty-f") {
      header_x = "epsilon";
      header_y = "rate_bound_bits";
      for (const double x : xs) ys.push_back(std::max(uncertainty_f(x, d), 0.0));
    } else {
      header_x = "epsilon";
      header_y = "capacity_bound_bits";
      const double constant = uncertainty_bound(d);
      for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(constant);
    }
    emit(c_swp, curve_csv(header_x, header_y, xs, ys));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return exit_code;
}
