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

/**
 * @file
 * Dense L-qubit statevectors and the contractions the encoder needs.
 *
 * Basis index n = sum_i 2^i sigma_i with qubit 0 least significant. On a
 * bond (i, j) the local index is sigma_i + 2 sigma_j, so a 4x4 operator on
 * the bond corresponds to the Kronecker product (op on j) x (op on i).
 */

#pragma once

#include <filesystem>
#include <random>
#include <variant>
#include <vector>

#include "aqce/types.hpp"

namespace aqce {

class StateVector {
  public:
    StateVector() = default;

    /// |0...0> on num_qubits qubits.
    explicit StateVector(std::size_t num_qubits);

    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t num_qubits, std::size_t index);

    /// Normalized state with i.i.d. complex Gaussian amplitudes.
    static StateVector random(std::size_t num_qubits, std::mt19937_64 &rng);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amps_.size(); }

    [[nodiscard]] const Complex *data() const { return amps_.data(); }
    [[nodiscard]] Complex *data() { return amps_.data(); }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const {
        return amps_;
    }

    Complex operator[](std::size_t n) const { return amps_[n]; }
    Complex &operator[](std::size_t n) { return amps_[n]; }

    [[nodiscard]] double norm() const;
    void normalize();

  private:
    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

struct FidelityTensor {
    Bond bond;
    Matrix4c matrix;
};

/// Throws DimensionError unless i != j and both are < num_qubits.
void validate_bond(const Bond &bond, std::size_t num_qubits);

/**
 * state <- u state on the bond (u^dagger when adjoint is set). Checks that
 * u is unitary unless check_unitary is false.
 */
void apply_two_qubit_inplace(StateVector &state, const Matrix4c &u,
                             const Bond &bond, bool adjoint = false,
                             bool check_unitary = true);

[[nodiscard]] StateVector apply_two_qubit(const StateVector &state,
                                          const Matrix4c &u, const Bond &bond,
                                          bool adjoint = false);

/// <bra|ket>
[[nodiscard]] Complex overlap(const StateVector &bra, const StateVector &ket);

/**
 * F[n][n'] = sum_env <n, env|ket> <bra|n', env>.
 * For any U on the bond, tr(F U^dagger) = <bra| U^dagger |ket>.
 */
[[nodiscard]] FidelityTensor fidelity_tensor(const StateVector &ket,
                                             const StateVector &bra,
                                             const Bond &bond);

/// Pauli index: 0 = I, 1 = X, 2 = Y, 3 = Z.
[[nodiscard]] Matrix2c pauli(int index);

/// <bra| P^a_i P^b_j |ket>, evaluated by applying the Pauli string directly.
[[nodiscard]] Complex pauli_overlap(const StateVector &bra,
                                   const StateVector &ket, const Bond &bond,
                                   int a, int b);

/**
 * Fidelity tensor assembled from its 16 Pauli-string expectation values,
 * F = sum_{a,b} (1/4) <bra| P^a_i P^b_j |ket> (P^a on i)(P^b on j).
 * This is the evaluation route available on a device; it must agree with
 * fidelity_tensor().
 */
[[nodiscard]] FidelityTensor fidelity_tensor_via_pauli(const StateVector &ket,
                                                       const StateVector &bra,
                                                       const Bond &bond);

/// Two-qubit reduced density matrix in the bond's local basis.
[[nodiscard]] Matrix4c reduced_density_matrix(const StateVector &state,
                                              const Bond &bond);

/// (Tr[rho_a rho_b])^(1/2)
[[nodiscard]] double q_fidelity(const ComplexMatrix &rho_a,
                                const ComplexMatrix &rho_b);

/**
 * A target written as sum_g chi_g |psi_g>, each component either a
 * computational basis state or a dense state.
 */
class LinearCombinationTarget {
  public:
    using Component = std::variant<std::size_t, StateVector>;
    struct Term {
        Complex coefficient;
        Component component;
    };

    explicit LinearCombinationTarget(std::size_t num_qubits)
        : num_qubits_(num_qubits) {}

    void add_basis(Complex coefficient, std::size_t index);
    void add_state(Complex coefficient, StateVector state);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }

    /// Dense sum. Throws NumericError if the result is not unit norm.
    [[nodiscard]] StateVector to_state() const;

    /// sum_g chi_g * fidelity_tensor(|psi_g>, bra, bond).
    [[nodiscard]] FidelityTensor fidelity_tensor(const StateVector &bra,
                                                 const Bond &bond) const;

  private:
    std::size_t num_qubits_;
    std::vector<Term> terms_;
};

/// Binary format: "QSV v1 L=<n>\n" then 2^L little-endian (re, im) doubles.
void write_qsv(const std::filesystem::path &path, const StateVector &state);
[[nodiscard]] StateVector read_qsv(const std::filesystem::path &path);

/// Text format: optional "# L=<n>" line, then "index re im" per line.
void write_state_text(const std::filesystem::path &path,
                      const StateVector &state);
[[nodiscard]] StateVector read_state_text(const std::filesystem::path &path);

/// Picks the binary or text reader from the file's first bytes.
[[nodiscard]] StateVector read_state(const std::filesystem::path &path);

} // namespace aqce
