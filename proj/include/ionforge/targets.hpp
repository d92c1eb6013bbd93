// Copyright 2026 ionforge contributors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ionforge/circuit.hpp"
#include "ionforge/linalg.hpp"
#include "ionforge/optimizer.hpp"

namespace ionforge::targets {

enum class TargetKind { Toffoli, Ucc, Xxz, MatrixFile };

struct TargetSpec {
  TargetKind kind = TargetKind::Toffoli;
  int n_qubits = 3;
  double beta_ucc = 0.0;  // Ucc rotation parameter
  double field_h = 0.0;   // Xxz longitudinal field
  double coupling_j = 0.0;
  double anisotropy = 0.0;
  double time_tau = 0.0;
  std::string path;  // MatrixFile source
};

// Controlled-controlled-X on qubits 1..3 (identity on the rest): swaps
// |110> <-> |111> in the leading three tensor factors.
ComplexMatrix toffoli(int n_qubits);

// exp(i * beta * G) with G = 2^n (|1..1><0..0| + |0..0><1..1|), the product
// of per-qubit lowering factors plus its conjugate. The 2^n amplitude is
// kept as defined, so the gate is a rotation by 2^{n+1} * beta inside the
// {|0..0>, |1..1>} plane and identity outside it.
ComplexMatrix ucc_unitary(int n_qubits, double beta_ucc);

// Open-chain evolution exp(-i H tau) with
//   H = -2h sum_j sz_j - J sum_<jk> (sx_j sx_k + sy_j sy_k
//                                    + delta (sz_j sz_k - I/4)).
ComplexMatrix xxz_unitary(int n_qubits, double field_h, double coupling_j,
                          double anisotropy, double time_tau);

// Whitespace-separated re,im pairs, row-major; size must be a power-of-two
// square and the matrix unitary to 1e-10. Lines starting with '#' skipped.
ComplexMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const ComplexMatrix& u);

ComplexMatrix build_target(const TargetSpec& spec);

// One rotation block is CXY, Z1..Zn, CXY.
int rotation_block_gate_count(int n_qubits);   // n + 2
int rotation_block_param_count(int n_qubits);  // n + 4

// Alternating ansatz with n_layers MS gates: R_0 MS R_1 MS ... MS R_L in
// application order, where every R is a rotation block.
circuit::Circuit layer_circuit(int n_qubits, int n_layers);

// Gate positions of the freezable rotation gates (everything except MS).
std::vector<int> rotation_gate_positions(const circuit::Circuit& c);

using BigCount = boost::multiprecision::cpp_int;

// Size estimate for the exhaustive layer search over l_ms layers:
// round((2^{(n+2)(L+1)} - 1) / (1 - 4^{-(n+2)})) - L^2, evaluated exactly.
BigCount combinations_count(int n_qubits, int l_ms);

struct LayerSearchConfig {
  double eps = 1e-2;
  int l_ms_max = 1;
  BigCount budget = 100000;  // refuse when combinations_count exceeds this
  optimizer::OptConfig opt;
};

struct LayerSearchResult {
  bool found = false;
  circuit::Circuit circuit;  // full ansatz at the winning layer count
  ParamVector params;        // frozen slots pinned to 0
  double cost = 1.0;
  int n_layers = 0;
  std::uint64_t combinations_tried = 0;
};

// Exhaustive search: for L = 1..l_ms_max and each subset of active rotation
// gates (fewest active first, index subsets in lexicographic order), freeze
// the rest at angle 0, optimize the free angles plus all MS angles, and stop
// at the first cost <= eps. Throws std::runtime_error when the enumeration
// estimate exceeds cfg.budget.
LayerSearchResult layer_search(const ComplexMatrix& target, int n_qubits,
                               const LayerSearchConfig& cfg);

}  // namespace ionforge::targets
