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

#include <doctest.h>

#include <json.hpp>

#include "envcap/experiments.hpp"
#include "envcap/two_qubit.hpp"
#include "test_helpers.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

using namespace envcap;
using namespace envcap::testing;

namespace {

// Unique scratch path that cleans up after itself.
struct ScratchFile {
  std::string path;
  explicit ScratchFile(const char* stem) {
    path = (std::filesystem::temp_directory_path() /
            (std::string("envcap_test_") + stem + ".json"))
               .string();
  }
  ~ScratchFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("io: matrices round-trip through the interchange format") {
  const ComplexMatrix m = haar_unitary(3, 900);
  const ComplexMatrix back = matrix_from_json(to_json(m));
  CHECK(max_abs(back - m) == 0.0);
}

TEST_CASE("io: malformed matrix documents are rejected") {
  CHECK_THROWS_AS(matrix_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\": 2, \"cols\": 2}"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\": 2, \"cols\": 2, \"re\": [1, 0, 0], \"im\": [0, 0, 0, 0]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\": 0, \"cols\": 2, \"re\": [], \"im\": []}"),
                  std::invalid_argument);
}

TEST_CASE("io: block lists accept both accepted shapes") {
  const std::string unit = to_json(ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  const auto direct = blocks_from_json("[" + unit + "," + unit + "]");
  CHECK(direct.size() == 2);
  const auto wrapped = blocks_from_json("{\"blocks\": [" + unit + "]}");
  CHECK(wrapped.size() == 1);
  CHECK_THROWS_AS(blocks_from_json("[]"), std::invalid_argument);
  CHECK_THROWS_AS(blocks_from_json("{\"matrices\": []}"), std::invalid_argument);
}

TEST_CASE("io: gate registry covers the documented names") {
  CHECK(make_gate("identity").dim_a() == 2);
  CHECK(make_gate("identity:3").dim_a() == 3);
  CHECK(make_gate("swap:3").dim_b() == 3);
  CHECK(make_gate("qutrit-vc").dim_a() == 3);
  CHECK(make_gate("weyl-vc").dim_a() == 4);
  CHECK(make_gate("weyl-vc:3").dim_a() == 9);
  CHECK_THROWS_AS(make_gate("nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(make_gate("identity:0"), std::invalid_argument);
  CHECK_THROWS_AS(make_gate("controlled"), std::invalid_argument);
}

TEST_CASE("io: the flip gates move data the advertised way") {
  const auto cnot = make_gate("cnot");
  const auto dcnot = make_gate("dcnot");
  for (Index a = 0; a < 2; ++a) {
    for (Index e = 0; e < 2; ++e) {
      const Index in = a * 2 + e;
      // cnot: receiver sees the control, flip exits through F.
      CHECK(std::abs(cnot.matrix()(a * 2 + (e ^ a), in) - 1.0) <= 1e-15);
      // dcnot: legs exchange and the environment leg picks up the sum.
      CHECK(std::abs(dcnot.matrix()(e * 2 + (a ^ e), in) - 1.0) <= 1e-15);
    }
  }
}

TEST_CASE("io: gates load from matrix files with and without dims") {
  ScratchFile square("square_gate");
  write_text_file(square.path, to_json(ComplexMatrix(haar_unitary(4, 901))));
  const auto inferred = make_gate("file:" + square.path);
  CHECK(inferred.dim_a() == 2);
  CHECK(inferred.dim_e() == 2);

  // Rectangular legs need the dims field.
  ScratchFile rect("rect_gate");
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json(ComplexMatrix(haar_unitary(6, 902))));
  write_text_file(rect.path, j.dump());
  CHECK_THROWS_AS(make_gate("file:" + rect.path), std::invalid_argument);
  j["dims"] = {2, 3, 3, 2};
  write_text_file(rect.path, j.dump());
  const auto rectangular = make_gate("file:" + rect.path);
  CHECK(rectangular.dim_a() == 2);
  CHECK(rectangular.dim_b() == 3);

  ScratchFile blocks("blocks_gate");
  const std::string unit = to_json(ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  write_text_file(blocks.path, "[" + unit + "," + unit + "]");
  const auto controlled = make_gate("controlled:" + blocks.path);
  CHECK(controlled.dim_a() == 2);
  CHECK_THROWS_AS(make_gate("file:/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("io: csv renderers emit aligned columns") {
  const std::vector<double> xs{0.0, 0.5, 1.0};
  const std::vector<double> ys{1.0, 0.25, 0.0};
  const std::string csv = curve_csv("x", "y", xs, ys);
  CHECK(csv == "x,y\n0,1\n0.5,0.25\n1,0\n");
  CHECK_THROWS_AS(curve_csv("x", "y", xs, std::vector<double>{1.0}), std::invalid_argument);
  const std::string hist = histogram_csv("gap", std::vector<double>{0.5, -0.25});
  CHECK(hist == "index,gap\n0,0.5\n1,-0.25\n");
}

TEST_CASE("io: estimates serialize with their bound tags") {
  CapacityEstimate est;
  est.bits = 0.75;
  est.bound = Bound::upper;
  est.achiever.ensemble.probs = {1.0};
  est.achiever.ensemble.states = {basis_state(2, 0)};
  est.achiever.helpers = {basis_state(2, 1)};
  est.trace.restarts = 3;
  est.trace.best_start = 1;
  est.trace.iterations = 42;
  const auto j = nlohmann::ordered_json::parse(to_json(est));
  CHECK(j.at("bits").get<double>() == 0.75);
  CHECK(j.at("bound").get<std::string>() == "upper");
  CHECK(j.at("achiever").at("states").size() == 1);
  CHECK(j.at("trace").at("iterations").get<long>() == 42);
  const std::string text = to_text(est);
  CHECK(text.find("upper") != std::string::npos);
  CHECK(text.find("0.75") != std::string::npos);
}

TEST_CASE("io: experiment reports serialize values and verdicts") {
  ExperimentReport rep;
  rep.name = "demo";
  rep.inputs = {{"d", 2.0}};
  rep.values.push_back({"alpha", 1.5, Bound::exact, 1e-9, true, true});
  rep.values.push_back({"beta", -0.5, Bound::lower, 0.0, false, true});
  rep.samples = {0.25, 0.75};
  rep.runtime_seconds = 1.25;
  const auto j = nlohmann::ordered_json::parse(to_json(rep));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("values").size() == 2);
  CHECK(j.at("values").at(0).at("bound").get<std::string>() == "exact");
  CHECK(j.at("samples").size() == 2);
  CHECK_FALSE(j.contains("runtime_seconds"));  // wall clock is console-only
}

TEST_CASE("io: angle and code records serialize") {
  const auto p = kraus_cirac_angles(make_gate("cnot"));
  const auto j = nlohmann::ordered_json::parse(to_json(p));
  CHECK(j.at("alpha_x").get<double>() == doctest::Approx(1.5707963267948966));
  CHECK(to_text(p).find("alpha_x") != std::string::npos);

  const auto code = conferencing_code_two_qubit(make_gate("cnot"));
  const auto cj = nlohmann::ordered_json::parse(to_json(code));
  CHECK(cj.at("sender_inputs").size() == 2);
  CHECK(cj.at("outputs").size() == 2);
  CHECK(to_text(code).find("message 0") != std::string::npos);
}

TEST_CASE("io: text files round-trip and report failures") {
  ScratchFile f("roundtrip");
  write_text_file(f.path, "line one\nline two\n");
  CHECK(read_text_file(f.path) == "line one\nline two\n");
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.txt"), std::invalid_argument);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/file.txt", "x"), std::invalid_argument);
}
