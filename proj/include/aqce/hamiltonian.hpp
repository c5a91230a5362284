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
 * Periodic XXZ chains H = sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1})
 * in Pauli units, and a Lanczos ground-state solver.
 *
 * The sum runs over i = 0..L-1 with site L identified with site 0. For L = 2
 * this counts the pair (0, 1) twice.
 */

#pragma once

#include <cstdint>

#include "aqce/state.hpp"

namespace aqce {

struct XXZModel {
    std::size_t num_sites = 2;
    double delta = 1.0;

    static XXZModel heisenberg(std::size_t num_sites) {
        return {num_sites, 1.0};
    }
    static XXZModel xy(std::size_t num_sites) { return {num_sites, 0.0}; }
};

struct GroundStateResult {
    double energy = 0.0;
    StateVector state;
    std::size_t iterations = 0; ///< total Lanczos steps
    double residual = 0.0;      ///< ||H psi - E psi||
};

struct LanczosOptions {
    double tol = 1e-12;
    std::uint64_t seed = 1;
    std::size_t max_iter = 5000;
    std::size_t krylov_dim = 80;
};

/// Raised when Lanczos does not converge; carries the best iterate.
class LanczosError : public NumericError {
  public:
    LanczosError(const std::string &what, GroundStateResult best)
        : NumericError(what), best_(std::move(best)) {}
    [[nodiscard]] const GroundStateResult &best() const { return best_; }

  private:
    GroundStateResult best_;
};

/// H|state>, unnormalized.
[[nodiscard]] StateVector apply_hamiltonian(const XXZModel &model,
                                            const StateVector &state);

/// <state|H|state> / <state|state>
[[nodiscard]] double rayleigh_quotient(const XXZModel &model,
                                       const StateVector &state);

/**
 * Restarted Lanczos with full reorthogonalization. Each cycle builds a
 * Krylov space from the current Ritz vector; iteration stops once two
 * consecutive cycles agree on the energy to within tol, or the Krylov space
 * becomes invariant.
 */
[[nodiscard]] GroundStateResult
lanczos_ground_state(const XXZModel &model, const LanczosOptions &options = {});

/// Cyclic translation by `shift` sites: sigma_i -> sigma_{(i + shift) mod L}.
[[nodiscard]] StateVector translate_sites(const StateVector &state,
                                          std::size_t shift);

} // namespace aqce
