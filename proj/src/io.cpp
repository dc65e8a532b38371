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

#include "envcap/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace envcap {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// ordered_json keeps its members in a vector, so references into an object
// are invalidated by later insertions; sub-arrays are therefore always built
// standalone and moved in at the end.
ordered_json vector_json(const ComplexVector& v) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  ordered_json j;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

ComplexMatrix matrix_from_fields(const ordered_json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
      !j.contains("im"))
    throw std::invalid_argument("matrix object needs rows, cols, re, im");
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const auto n = static_cast<std::size_t>(rows * cols);
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n)
    throw std::invalid_argument("matrix re/im arrays must have rows*cols entries");
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, ++k)
      m(r, c) = Complex(re.at(k).get<double>(), im.at(k).get<double>());
  }
  return m;
}

ordered_json estimate_json(const CapacityEstimate& est) {
  ordered_json j;
  j["bits"] = est.bits;
  j["bound"] = std::string(to_string(est.bound));
  ordered_json states = ordered_json::array();
  for (const auto& s : est.achiever.ensemble.states) states.push_back(vector_json(s));
  ordered_json helpers = ordered_json::array();
  for (const auto& h : est.achiever.helpers) helpers.push_back(vector_json(h));
  ordered_json achiever;
  achiever["probs"] = est.achiever.ensemble.probs;
  achiever["states"] = std::move(states);
  achiever["helpers"] = std::move(helpers);
  j["achiever"] = std::move(achiever);
  ordered_json trace;
  trace["restarts"] = est.trace.restarts;
  trace["best_start"] = est.trace.best_start;
  trace["iterations"] = est.trace.iterations;
  j["trace"] = std::move(trace);
  return j;
}

ordered_json report_json(const ExperimentReport& rep) {
  ordered_json j;
  j["name"] = rep.name;
  j["pass"] = rep.pass;
  ordered_json inputs;
  for (const auto& [key, value] : rep.inputs) inputs[key] = value;
  j["inputs"] = std::move(inputs);
  ordered_json values = ordered_json::array();
  for (const auto& v : rep.values) {
    ordered_json entry;
    entry["name"] = v.name;
    entry["value"] = v.value;
    entry["bound"] = std::string(to_string(v.bound));
    entry["tolerance"] = v.tolerance;
    entry["asserted"] = v.asserted;
    entry["pass"] = v.pass;
    values.push_back(std::move(entry));
  }
  j["values"] = std::move(values);
  if (!rep.samples.empty()) j["samples"] = rep.samples;
  return j;
}

}  // namespace

std::string to_json(const ComplexMatrix& m) { return dump(matrix_json(m)); }

std::string to_json(const CapacityEstimate& est) { return dump(estimate_json(est)); }

std::string to_json(const ExperimentReport& rep) { return dump(report_json(rep)); }

std::string to_json(const KrausCiracParams& p) {
  ordered_json j;
  j["alpha_x"] = p.alpha_x;
  j["alpha_y"] = p.alpha_y;
  j["alpha_z"] = p.alpha_z;
  return dump(j);
}

std::string to_json(const ConferencingCode2Q& code) {
  ordered_json senders = ordered_json::array();
  for (const auto& s : code.sender_inputs) senders.push_back(vector_json(s.vector()));
  ordered_json helpers = ordered_json::array();
  for (const auto& h : code.helper_inputs) helpers.push_back(vector_json(h.vector()));
  ordered_json weights = ordered_json::array();
  for (const auto& [c0, c1] : code.weights) {
    ordered_json w;
    w["c0"] = {{"re", c0.real()}, {"im", c0.imag()}};
    w["c1"] = {{"re", c1.real()}, {"im", c1.imag()}};
    weights.push_back(std::move(w));
  }
  ordered_json outs = ordered_json::array();
  for (const auto& o : code.outputs) outs.push_back(matrix_json(o));
  ordered_json j;
  j["sender_inputs"] = std::move(senders);
  j["helper_inputs"] = std::move(helpers);
  j["weights"] = std::move(weights);
  j["outputs"] = std::move(outs);
  return dump(j);
}

std::string to_text(const CapacityEstimate& est) {
  std::ostringstream out;
  out << "capacity: " << fmt_g(est.bits) << " bits  [" << to_string(est.bound) << "]\n";
  out << "search: restarts=" << est.trace.restarts << " best_start=" << est.trace.best_start
      << " iterations=" << est.trace.iterations << "\n";
  out << "achiever: " << est.achiever.ensemble.probs.size() << " ensemble members, "
      << est.achiever.helpers.size() << " helper states\n";
  return out.str();
}

std::string to_text(const ExperimentReport& rep) {
  std::ostringstream out;
  out << "experiment: " << rep.name << "\n";
  out << "inputs:";
  for (const auto& [key, value] : rep.inputs) out << " " << key << "=" << fmt_g(value);
  out << "\n";
  for (const auto& v : rep.values) {
    out << "  " << v.name << " = " << fmt_g(v.value) << "  [" << to_string(v.bound) << "]";
    if (v.asserted) out << "  (tol " << fmt_g(v.tolerance) << ": " << (v.pass ? "pass" : "FAIL") << ")";
    out << "\n";
  }
  if (!rep.samples.empty()) out << "  samples: " << rep.samples.size() << " recorded\n";
  out << "result: " << (rep.pass ? "PASS" : "FAIL") << "  (runtime " << fmt_g(rep.runtime_seconds)
      << " s)\n";
  return out.str();
}

std::string to_text(const KrausCiracParams& p) {
  std::ostringstream out;
  out << "alpha_x: " << fmt_g(p.alpha_x) << "\n";
  out << "alpha_y: " << fmt_g(p.alpha_y) << "\n";
  out << "alpha_z: " << fmt_g(p.alpha_z) << "\n";
  return out.str();
}

std::string to_text(const ConferencingCode2Q& code) {
  std::ostringstream out;
  out << "conferencing code: " << code.sender_inputs.size() << " codewords\n";
  for (std::size_t b = 0; b < code.sender_inputs.size(); ++b) {
    const auto& a = code.sender_inputs[b].vector();
    const auto& h = code.helper_inputs[b].vector();
    out << "  message " << b << ": sender (" << fmt_g(a[0].real()) << "+" << fmt_g(a[0].imag())
        << "i, " << fmt_g(a[1].real()) << "+" << fmt_g(a[1].imag()) << "i)"
        << "  helper (" << fmt_g(h[0].real()) << "+" << fmt_g(h[0].imag()) << "i, "
        << fmt_g(h[1].real()) << "+" << fmt_g(h[1].imag()) << "i)\n";
  }
  return out.str();
}

std::string curve_csv(std::string_view x_name, std::string_view y_name,
                      std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("curve_csv: column length mismatch");
  std::ostringstream out;
  out << x_name << "," << y_name << "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out << fmt_g(xs[i]) << "," << fmt_g(ys[i]) << "\n";
  return out.str();
}

std::string histogram_csv(std::string_view value_name, std::span<const double> samples) {
  std::ostringstream out;
  out << "index," << value_name << "\n";
  for (std::size_t i = 0; i < samples.size(); ++i) out << i << "," << fmt_g(samples[i]) << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ComplexMatrix matrix_from_json(const std::string& text) {
  return matrix_from_fields(parse(text));
}

std::vector<ComplexMatrix> blocks_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  const ordered_json* list = nullptr;
  if (j.is_array()) {
    list = &j;
  } else if (j.is_object() && j.contains("blocks") && j.at("blocks").is_array()) {
    list = &j.at("blocks");
  } else {
    throw std::invalid_argument("expected a JSON array of matrices or {\"blocks\": [...]}");
  }
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(list->size());
  for (const auto& entry : *list) blocks.push_back(matrix_from_fields(entry));
  if (blocks.empty()) throw std::invalid_argument("block list is empty");
  return blocks;
}

namespace {

Index parse_dim(const std::string& arg, Index fallback) {
  if (arg.empty()) return fallback;
  try {
    const long long d = std::stoll(arg);
    if (d < 1) throw std::invalid_argument("");
    return static_cast<Index>(d);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid dimension argument: " + arg);
  }
}

Index exact_square_root(Index x, const char* what) {
  const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(x))));
  if (r * r != x)
    throw std::invalid_argument(std::string(what) +
                                ": cannot infer square legs; add a \"dims\" field");
  return r;
}

BipartiteUnitary gate_from_file(const std::string& path) {
  const ordered_json j = parse(read_text_file(path));
  const ComplexMatrix m = matrix_from_fields(j);
  Index da = 0, de = 0, db = 0, df = 0;
  if (j.contains("dims")) {
    const auto& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 4)
      throw std::invalid_argument("dims must be a 4-element array [a, e, b, f]");
    da = dims.at(0).get<Index>();
    de = dims.at(1).get<Index>();
    db = dims.at(2).get<Index>();
    df = dims.at(3).get<Index>();
  } else {
    da = de = exact_square_root(m.cols(), "gate file");
    db = df = exact_square_root(m.rows(), "gate file");
  }
  return BipartiteUnitary(m, da, de, db, df);
}

}  // namespace

BipartiteUnitary make_gate(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (name == "identity") {
    const Index d = parse_dim(arg, 2);
    return BipartiteUnitary(ComplexMatrix::Identity(d * d, d * d), d, d, d, d);
  }
  if (name == "swap") {
    const Index d = parse_dim(arg, 2);
    return swap_operator(d, d);
  }
  if (name == "cnot") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (Index a = 0; a < 2; ++a)
      for (Index e = 0; e < 2; ++e) m(a * 2 + (e ^ a), a * 2 + e) = 1.0;
    return BipartiteUnitary(std::move(m), 2, 2, 2, 2);
  }
  if (name == "dcnot") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (Index a = 0; a < 2; ++a)
      for (Index e = 0; e < 2; ++e) m(e * 2 + (a ^ e), a * 2 + e) = 1.0;
    return BipartiteUnitary(std::move(m), 2, 2, 2, 2);
  }
  if (name == "qutrit-vc") return controlled_unitary(qutrit_blocks());
  if (name == "weyl-vc") return weyl_controlled(parse_dim(arg, 2));
  if (name == "controlled") {
    if (arg.empty()) throw std::invalid_argument("controlled gate needs a block file");
    const auto blocks = blocks_from_json(read_text_file(arg));
    return controlled_unitary(blocks);
  }
  if (name == "file") {
    if (arg.empty()) throw std::invalid_argument("file gate needs a path");
    return gate_from_file(arg);
  }
  throw std::invalid_argument("unknown gate: " + spec);
}

}  // namespace envcap
