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

// Acceptance runner.  Each numbered scenario exercises one end-to-end claim
// of the library and prints a single pass/fail line.  Where a scenario has a
// runtime budget the measured wall time is part of the pass condition.
//
// Usage: acceptance [N]   (run scenario N only; default runs all twelve)

#include "envcap/capacity.hpp"
#include "envcap/channels.hpp"
#include "envcap/experiments.hpp"
#include "envcap/io.hpp"
#include "envcap/optimize.hpp"
#include "envcap/qinfo.hpp"
#include "envcap/tensor.hpp"
#include "envcap/two_qubit.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace envcap;

namespace {

constexpr const char* kCliPath = ENVCAP_CLI_PATH;
constexpr const char* kUnitTestsPath = ENVCAP_UNIT_TESTS_PATH;
constexpr double kPi = std::numbers::pi_v<double>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (ok) return;
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

void annotate(Outcome& o, const std::string& what) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

std::string scratch_path(const std::string& stem) {
  return (std::filesystem::temp_directory_path() /
          ("envcap_acceptance_" + stem + "_" + std::to_string(::getpid()) + ".json"))
      .string();
}

int run_command(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const ReportValue& value_named(const ExperimentReport& rep, const std::string& name) {
  for (const auto& v : rep.values) {
    if (v.name == name) return v;
  }
  throw std::out_of_range("no report value named " + name);
}

BipartiteUnitary haar_gate(std::uint64_t seed) {
  return BipartiteUnitary(haar_unitary(4, seed), 2, 2, 2, 2);
}

// 1. The named gates sit at the advertised corners of the angle tetrahedron,
//    checked through the command line binary end to end.
Outcome criterion1() {
  Outcome o;
  const struct {
    const char* gate;
    double x, y, z;
  } corners[] = {
      {"identity", 0.0, 0.0, 0.0},
      {"cnot", kPi / 2, 0.0, 0.0},
      {"dcnot", kPi / 2, kPi / 2, 0.0},
      {"swap", kPi / 2, kPi / 2, kPi / 2},
  };
  double worst = 0.0;
  for (const auto& c : corners) {
    const std::string out = scratch_path(std::string("c1_") + c.gate);
    const int code =
        run_command("\"" + std::string(kCliPath) + "\" decompose --gate " + c.gate + " --out " + out);
    require(o, code == 0, std::string(c.gate) + " exited with " + std::to_string(code));
    if (code != 0) continue;
    const auto j = nlohmann::ordered_json::parse(read_text_file(out));
    const double dev = std::max({std::abs(j.at("alpha_x").get<double>() - c.x),
                                 std::abs(j.at("alpha_y").get<double>() - c.y),
                                 std::abs(j.at("alpha_z").get<double>() - c.z)});
    worst = std::max(worst, dev);
    require(o, dev <= 1e-8, std::string(c.gate) + " off corner by " + fmt(dev));
    std::remove(out.c_str());
  }
  if (o.pass) annotate(o, "max corner deviation " + fmt(worst));
  return o;
}

// 2. Canonical angles survive a round trip through the generated unitary and
//    do not move under random local rotations.
Outcome criterion2() {
  Outcome o;
  auto rng = rng_stream(42, 0);
  std::uniform_real_distribution<double> uni(0.0, kPi / 2);
  double worst_round = 0.0;
  double worst_local = 0.0;
  for (int i = 0; i < 100; ++i) {
    double a = uni(rng), b = uni(rng), c = uni(rng);
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const KrausCiracParams p{a, b, c};
    const BipartiteUnitary w = canonical_unitary(p);
    const KrausCiracParams q = kraus_cirac_angles(w);
    const double round = std::max({std::abs(q.alpha_x - a), std::abs(q.alpha_y - b),
                                   std::abs(q.alpha_z - c)});
    worst_round = std::max(worst_round, round);

    const std::uint64_t s = 1000 + 4 * static_cast<std::uint64_t>(i);
    const ComplexMatrix dressed = kron(haar_unitary(2, s), haar_unitary(2, s + 1)) * w.matrix() *
                                  kron(haar_unitary(2, s + 2), haar_unitary(2, s + 3));
    const KrausCiracParams r = kraus_cirac_angles(BipartiteUnitary(dressed, 2, 2, 2, 2));
    const double local = std::max({std::abs(r.alpha_x - a), std::abs(r.alpha_y - b),
                                   std::abs(r.alpha_z - c)});
    worst_local = std::max(worst_local, local);
  }
  require(o, worst_round <= 1e-8, "round trip drift " + fmt(worst_round));
  require(o, worst_local <= 1e-8, "local dressing drift " + fmt(worst_local));
  if (o.pass)
    annotate(o, "round trip " + fmt(worst_round) + ", local dressing " + fmt(worst_local));
  return o;
}

// 3. The passive helper capacity of a controlled phase family matches the
//    closed form H2((1 + sin u) / 2), and the swap gate carries nothing.
Outcome criterion3() {
  Outcome o;
  OptimizerConfig cfg;
  cfg.restarts = 64;
  cfg.seed = 0;
  double worst = 0.0;
  for (const double u : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    const double t = kPi / 2 - u;
    ComplexMatrix s1 = ComplexMatrix::Zero(2, 2);
    s1(0, 0) = std::exp(Complex(0.0, -t));
    s1(1, 1) = std::exp(Complex(0.0, t));
    const std::vector<ComplexMatrix> blocks{ComplexMatrix::Identity(2, 2), s1};
    const CapacityEstimate est = chi_H_tensor(controlled_unitary(blocks), cfg);
    const double target = binary_entropy((1.0 + std::sin(u)) / 2.0);
    const double dev = std::abs(est.bits - target);
    worst = std::max(worst, dev);
    require(o, dev <= 1e-3, "u=" + fmt(u) + " off by " + fmt(dev));
  }
  const CapacityEstimate swap_est = chi_H_tensor(make_gate("swap"), cfg);
  require(o, std::abs(swap_est.bits) <= 1e-6, "swap capacity " + fmt(swap_est.bits));
  if (o.pass) annotate(o, "max closed-form deviation " + fmt(worst));
  return o;
}

// 4. Pairing the qutrit gate with itself certifies log2(3) while the
//    standalone search stays below it by a logged positive margin.
Outcome criterion4() {
  Outcome o;
  OptimizerConfig cfg;
  cfg.restarts = 256;
  cfg.seed = 0;
  const ExperimentReport rep = superadditivity_qutrit(cfg);
  require(o, rep.pass, "report failed");
  require(o, value_named(rep, "gram_deviation").value <= 1e-12, "outputs not orthonormal");
  require(o, std::abs(value_named(rep, "paired_rate").value - std::log2(3.0)) <= 1e-9,
          "paired rate off log2(3)");
  const double margin = value_named(rep, "superadditivity_margin").value;
  require(o, margin > 0.0, "margin " + fmt(margin) + " not positive");
  if (o.pass)
    annotate(o, "margin " + fmt(margin) + " at standalone " +
                    fmt(value_named(rep, "standalone_chi").value) + " bits");
  return o;
}

// 5. The shift and clock orbit pairing certifies 2 log2(d) for d = 2, 3 and
//    the standalone constructive achiever reaches log2(d).
Outcome criterion5() {
  Outcome o;
  for (const Index d : {Index{2}, Index{3}}) {
    OptimizerConfig cfg;
    cfg.seed = 0;
    const ExperimentReport rep = superadditivity_weyl(d, cfg);
    require(o, rep.pass, "d=" + std::to_string(d) + " report failed");
    require(o, value_named(rep, "gram_deviation").value <= 1e-12,
            "d=" + std::to_string(d) + " outputs not orthonormal");
    require(o,
            std::abs(value_named(rep, "paired_rate").value - 2.0 * std::log2(double(d))) <= 1e-9,
            "d=" + std::to_string(d) + " paired rate off 2 log2(d)");
    require(o,
            std::abs(value_named(rep, "standalone_chi").value - std::log2(double(d))) <= 1e-6,
            "d=" + std::to_string(d) + " standalone achiever below log2(d)");
  }
  if (o.pass) annotate(o, "d = 2 and d = 3 both certified");
  return o;
}

// 6. Code construction succeeds on 100 Haar two-qubit gates: product inputs
//    whose two outputs are perfectly distinguishable.
Outcome criterion6() {
  Outcome o;
  double worst_rebuild = 0.0;
  double worst_dist = 2.0;
  for (int i = 0; i < 100; ++i) {
    const BipartiteUnitary w = haar_gate(7000 + static_cast<std::uint64_t>(i));
    ConferencingCode2Q code;
    try {
      code = conferencing_code_two_qubit(w);
    } catch (const std::exception& e) {
      require(o, false, "instance " + std::to_string(i) + " threw: " + e.what());
      continue;
    }
    for (std::size_t b = 0; b < 2; ++b) {
      const ComplexMatrix out = pure_input_output(w, code.sender_inputs[b].vector(),
                                                  code.helper_inputs[b].vector());
      worst_rebuild = std::max(worst_rebuild, max_abs(out - code.outputs[b]));
    }
    worst_dist = std::min(worst_dist, trace_norm(code.outputs[0] - code.outputs[1]));
  }
  require(o, worst_rebuild <= 1e-9, "product inputs do not rebuild outputs: " + fmt(worst_rebuild));
  require(o, worst_dist >= 2.0 - 1e-9, "trace distance dips to " + fmt(worst_dist));
  if (o.pass)
    annotate(o, "rebuild error " + fmt(worst_rebuild) + ", min trace distance " + fmt(worst_dist));
  return o;
}

// 7. A gate run against its conjugate holds the maximally entangled pair
//    fixed, so the paired output is exactly pure.
Outcome criterion7() {
  Outcome o;
  for (const Index d : {Index{2}, Index{3}}) {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.seed = 0;
    const ExperimentReport rep = conjugate_pair_conferencing(d, 11, cfg);
    require(o, rep.pass, "d=" + std::to_string(d) + " report failed");
    require(o, value_named(rep, "fixed_point_deviation").value <= 1e-10,
            "d=" + std::to_string(d) + " fixed point drifts");
    require(o, value_named(rep, "paired_output_entropy").value <= 1e-9,
            "d=" + std::to_string(d) + " paired output not pure");
  }
  if (o.pass) annotate(o, "fixed point and purity hold at d = 2 and d = 3");
  return o;
}

// 8. The augmented gate acts blockwise as the advertised shift and clock
//    dressing of the base channel, and conferencing on the augmented swap
//    recovers exactly one bit.
Outcome criterion8() {
  Outcome o;
  const BipartiteUnitary base = haar_gate(321);
  const BipartiteUnitary aug = shor_augment(base);
  double worst = 0.0;
  const std::vector<ComplexVector> helpers = {
      ComplexVector(ComplexVector::Unit(2, 0)),
      [] {
        auto rng = rng_stream(87, 0);
        ComplexVector v(2);
        for (Index i = 0; i < 2; ++i) v[i] = Complex(standard_normal(rng), standard_normal(rng));
        v.normalize();
        return v;
      }(),
  };
  for (const auto& eta : helpers) {
    const QuantumChannel dressed = effective_channel(aug, eta);
    const QuantumChannel bare = effective_channel(base, eta);
    for (Index l = 0; l < 4; ++l) {
      const ComplexMatrix wl = weyl(2, l / 2, l % 2);
      for (Index lp = 0; lp < 4; ++lp) {
        for (Index a = 0; a < 2; ++a) {
          for (Index ap = 0; ap < 2; ++ap) {
            ComplexMatrix unit = ComplexMatrix::Zero(8, 8);
            unit(l * 2 + a, lp * 2 + ap) = 1.0;
            ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
            if (l == lp) {
              ComplexMatrix base_unit = ComplexMatrix::Zero(2, 2);
              base_unit(a, ap) = 1.0;
              expected = wl * apply_channel(bare, base_unit) * wl.adjoint();
            }
            worst = std::max(worst, max_abs(apply_channel(dressed, unit) - expected));
          }
        }
      }
    }
  }
  require(o, worst <= 1e-9, "blockwise identity off by " + fmt(worst));

  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.ensemble_size = 8;
  cfg.seed = 0;
  const CapacityEstimate est = conf_product_capacity(shor_augment(make_gate("swap")), cfg);
  require(o, std::abs(est.bits - 1.0) <= 1e-3,
          "augmented swap conferencing " + fmt(est.bits) + " bits");
  if (o.pass)
    annotate(o, "identity error " + fmt(worst) + ", augmented swap at " + fmt(est.bits) + " bits");
  return o;
}

// 9. An entangled ancilla buys nothing for controlled qubit interactions:
//    the sweep gap stays tiny and both estimates coincide per instance.
Outcome criterion9() {
  Outcome o;
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 0;
  const ExperimentReport rep = ancilla_equality_sweep(50, 5, cfg);
  require(o, rep.pass, "sweep report failed");
  const double gap = value_named(rep, "max_abs_gap").value;
  require(o, gap <= 2e-4, "sweep gap " + fmt(gap));

  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t s = 9100 + 2 * static_cast<std::uint64_t>(i);
    const std::vector<ComplexMatrix> blocks{haar_unitary(2, s), haar_unitary(2, s + 1)};
    const CapacityEstimate plain = controlled_capacity(blocks, false, cfg);
    const CapacityEstimate assisted = controlled_capacity(blocks, true, cfg);
    worst = std::max(worst, std::abs(plain.bits - assisted.bits));
  }
  require(o, worst <= 5e-4, "per-instance disagreement " + fmt(worst));
  if (o.pass) annotate(o, "sweep gap " + fmt(gap) + ", instance gap " + fmt(worst));
  return o;
}

// 10. The closed-form bounds behave: positive uncertainty floor, exact root
//     of the profile, zero continuity penalty at zero, and the conferencing
//     floor sits below every measured two-qubit conferencing rate.
Outcome criterion10() {
  Outcome o;
  for (Index d = 2; d <= 16; ++d) {
    require(o, uncertainty_bound(d) > 0.0, "floor not positive at d=" + std::to_string(d));
    const double root = uncertainty_epsilon0(d);
    require(o, std::abs(uncertainty_f(root, d)) <= 1e-9,
            "profile root off at d=" + std::to_string(d));
    require(o, continuity_bound(0.0, d) == 0.0, "continuity not zero at d=" + std::to_string(d));
  }
  const double floor = conf_lower_bound(2, 2);
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.ensemble_size = 2;
  cfg.seed = 0;
  double lowest = 1e9;
  for (int i = 0; i < 50; ++i) {
    const CapacityEstimate est =
        conf_product_capacity(haar_gate(9000 + static_cast<std::uint64_t>(i)), cfg);
    lowest = std::min(lowest, est.bits);
  }
  require(o, lowest >= floor, "measured rate " + fmt(lowest) + " under floor " + fmt(floor));
  if (o.pass) annotate(o, "floor " + fmt(floor) + ", lowest measured rate " + fmt(lowest));
  return o;
}

// 11. The property suites guard the probabilistic invariants on every build;
//     here they run once more through the unit binary.
Outcome criterion11() {
  Outcome o;
  const int code = run_command("\"" + std::string(kUnitTestsPath) + "\" '-tc=property:*'");
  require(o, code == 0, "property suite exited with " + std::to_string(code));
  if (o.pass) annotate(o, "property suite green");
  return o;
}

// 12. Asymptotic claims about regularized rates and concentration constants
//     are out of reach at desk scale by design.  They are covered by
//     recorded statistics whose reference values are logged but not asserted.
Outcome criterion12() {
  Outcome o;
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 0;
  const ExperimentReport rep = haar_min_entropy_stats(2, 10, 0, cfg);
  require(o, rep.pass, "statistics report failed");
  require(o, !value_named(rep, "expectation_bound").asserted,
          "expectation reference unexpectedly asserted");
  require(o, !value_named(rep, "remark_constant").asserted,
          "remark constant unexpectedly asserted");
  if (o.pass)
    annotate(o, "declared: statistics recorded, references logged unasserted (mean " +
                    fmt(value_named(rep, "mean_min_entropy").value) + " bits)");
  return o;
}

struct Scenario {
  int id;
  const char* label;
  double budget_seconds;  // 0 means no budget is part of the pass condition
  Outcome (*fn)();
};

constexpr Scenario kScenarios[] = {
    {1, "named gates sit at the canonical corners", 1.0, criterion1},
    {2, "canonical angles round-trip and ignore local dressing", 30.0, criterion2},
    {3, "controlled-phase capacity matches the closed form", 300.0, criterion3},
    {4, "paired qutrit gate beats its standalone estimate", 600.0, criterion4},
    {5, "orbit pairing certifies twice the single-use rate", 120.0, criterion5},
    {6, "conferencing codes succeed on 100 random gates", 60.0, criterion6},
    {7, "conjugate pairs hold the entangled state fixed", 0.0, criterion7},
    {8, "augmentation dresses the channel blockwise", 0.0, criterion8},
    {9, "entangled ancilla leaves controlled capacity unchanged", 0.0, criterion9},
    {10, "closed-form bounds hold and the floor is dominated", 300.0, criterion10},
    {11, "property suites pass", 120.0, criterion11},
    {12, "asymptotics declared out of scope, statistics recorded", 0.0, criterion12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 12) {
      std::fprintf(stderr, "usage: acceptance [1-12]\n");
      return 2;
    }
  }
  int failures = 0;
  for (const auto& s : kScenarios) {
    if (only != 0 && s.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = s.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("unhandled exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = s.budget_seconds <= 0.0 || seconds < s.budget_seconds;
    if (!in_budget) {
      o.pass = false;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += "over budget of " + fmt(s.budget_seconds) + " s";
    }
    std::printf("criterion %d: %s  %s%s%s%s (runtime %.2f s)\n", s.id, o.pass ? "PASS" : "FAIL",
                s.label, o.detail.empty() ? "" : " [", o.detail.c_str(),
                o.detail.empty() ? "" : "]", seconds);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
