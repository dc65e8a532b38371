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

#ifndef ENVCAP_IO_HPP
#define ENVCAP_IO_HPP

/**
 * @file io.hpp
 * @brief Serialization, matrix file interchange, and the gate registry.
 *
 * Matrices travel as JSON objects {"rows": n, "cols": m, "re": [...],
 * "im": [...]} with row-major entries; that is the only file format the
 * command line accepts.  Result types serialize with a fixed key order so
 * identical inputs produce byte-identical artifacts.  Wall-clock runtimes
 * appear in console text but never in serialized output.
 */

#include "envcap/capacity.hpp"
#include "envcap/channels.hpp"
#include "envcap/experiments.hpp"
#include "envcap/two_qubit.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace envcap {

/// JSON documents, 2-space indent, fixed key order, trailing newline.
std::string to_json(const ComplexMatrix& m);
std::string to_json(const CapacityEstimate& est);
std::string to_json(const ExperimentReport& rep);
std::string to_json(const KrausCiracParams& p);
std::string to_json(const ConferencingCode2Q& code);

/// Console renderings of the same payloads.
std::string to_text(const CapacityEstimate& est);
std::string to_text(const ExperimentReport& rep);
std::string to_text(const KrausCiracParams& p);
std::string to_text(const ConferencingCode2Q& code);

/// Two-column CSV with a header row; values printed with %.12g.
std::string curve_csv(std::string_view x_name, std::string_view y_name,
                      std::span<const double> xs, std::span<const double> ys);

/// Indexed single-column CSV for raw experiment samples.
std::string histogram_csv(std::string_view value_name, std::span<const double> samples);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Parse the matrix interchange object. Throws std::invalid_argument on
/// malformed documents (including JSON syntax errors).
ComplexMatrix matrix_from_json(const std::string& text);

/// Parse a list of matrices: either a JSON array of interchange objects or
/// an object with a "blocks" array.
std::vector<ComplexMatrix> blocks_from_json(const std::string& text);

/**
 * Gate registry. Accepted specs:
 *   identity[:d]      identity interaction on d x d legs (default 2)
 *   swap[:d]          swap interaction on d x d legs (default 2)
 *   cnot              |a,e> -> |a, e xor a>, receiver sees the control
 *   dcnot             |a,e> -> |e, a xor e>
 *   qutrit-vc         the three-block qutrit controlled interaction
 *   weyl-vc[:d]       controlled discrete Weyl blocks (default 2)
 *   controlled:<file> controlled interaction from a block-list file
 *   file:<path>       interchange-format matrix; an optional "dims"
 *                     field [a, e, b, f] names the legs, otherwise all
 *                     four legs are inferred square
 * Unknown names throw std::invalid_argument.
 */
BipartiteUnitary make_gate(const std::string& spec);

}  // namespace envcap

#endif  // ENVCAP_IO_HPP
