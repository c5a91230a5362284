// Copyright 2026 The AQCE Authors
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

// Independent reference implementations used only by tests. Nothing here
// calls into the library's kernels or decompositions.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "aqce/circuit.hpp"

namespace aqce::oracle {

/// Full 2^L x 2^L matrix of u acting on the bond (index rule s_i + 2 s_j).
ComplexMatrix embed_two_qubit(const Matrix4c &u, const Bond &bond,
                              std::size_t num_qubits);

/// Dense product of all blocks, first block rightmost.
ComplexMatrix circuit_matrix(const Circuit &circuit);

/// Dense sum over the ring of XX + YY + delta ZZ, built from Kronecker
/// products of Pauli matrices.
ComplexMatrix dense_xxz(std::size_t num_sites, double delta);

/// Singular values by one-sided complex Jacobi rotations, descending.
std::vector<double> jacobi_singular_values(const ComplexMatrix &m);

/// Lowest eigenvalue of a Hermitian matrix by cyclic complex Jacobi.
double jacobi_lowest_eigenvalue(const ComplexMatrix &h);

Eigen::VectorXcd to_vector(const StateVector &s);
StateVector from_vector(std::size_t num_qubits, const Eigen::VectorXcd &v);

/// qelib1 u3(theta, phi, lambda).
Matrix2c u3(double theta, double phi, double lambda);

/// Unitary of an OpenQASM 2.0 program restricted to qreg, u3 and cx.
ComplexMatrix qasm_unitary(const std::string &program);

/// Distinct ordered pair of qubits.
Bond random_bond(std::size_t num_qubits, std::mt19937_64 &rng);

} // namespace aqce::oracle
