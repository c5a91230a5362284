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

#include "aqce/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace aqce {

namespace {

using Vec = Eigen::VectorXcd;

void check_model(const XXZModel &model) {
    if (model.num_sites < 2) {
        throw InputError("XXZ model needs at least two sites");
    }
    if (!std::isfinite(model.delta)) {
        throw InputError("XXZ model: anisotropy must be finite");
    }
}

// out = H in. XX + YY on a bond maps |01> <-> |10> with amplitude 2 and
// annihilates |00>, |11>; ZZ is diagonal with eigenvalue +-1.
void apply_h(const XXZModel &model, const Complex *in, Complex *out) {
    const std::size_t num_sites = model.num_sites;
    const std::size_t dim = std::size_t{1} << num_sites;
    for (std::size_t n = 0; n < dim; ++n) {
        out[n] = 0.0;
    }
    for (std::size_t n = 0; n < dim; ++n) {
        const Complex a = in[n];
        double diag = 0.0;
        for (std::size_t i = 0; i < num_sites; ++i) {
            const std::size_t j = (i + 1) % num_sites;
            const bool si = ((n >> i) & 1U) != 0;
            const bool sj = ((n >> j) & 1U) != 0;
            if (si == sj) {
                diag += model.delta;
            } else {
                diag -= model.delta;
                const std::size_t flipped =
                    n ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
                out[flipped] += 2.0 * a;
            }
        }
        out[n] += diag * a;
    }
}

Vec apply_h(const XXZModel &model, const Vec &v) {
    Vec out(v.size());
    apply_h(model, v.data(), out.data());
    return out;
}

StateVector to_state(std::size_t num_sites, const Vec &v) {
    return StateVector(num_sites, std::vector<Complex>(v.data(),
                                                        v.data() + v.size()));
}

} // namespace

StateVector apply_hamiltonian(const XXZModel &model, const StateVector &state) {
    check_model(model);
    if (state.num_qubits() != model.num_sites) {
        throw DimensionError("apply_hamiltonian: state has " +
                             std::to_string(state.num_qubits()) +
                             " qubits, model has " +
                             std::to_string(model.num_sites) + " sites");
    }
    std::vector<Complex> out(state.dimension());
    apply_h(model, state.data(), out.data());
    return StateVector(state.num_qubits(), std::move(out));
}

double rayleigh_quotient(const XXZModel &model, const StateVector &state) {
    const StateVector h = apply_hamiltonian(model, state);
    return overlap(state, h).real() / overlap(state, state).real();
}

GroundStateResult lanczos_ground_state(const XXZModel &model,
                                       const LanczosOptions &options) {
    check_model(model);
    if (!(options.tol > 0.0)) {
        throw InputError("lanczos_ground_state: tol must be positive");
    }
    const std::size_t num_sites = model.num_sites;
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_sites);
    const Eigen::Index krylov =
        std::max<Eigen::Index>(2, std::min<Eigen::Index>(
                                      dim, static_cast<Eigen::Index>(
                                               options.krylov_dim)));

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Vec start(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const double re = uniform(rng);
        const double im = uniform(rng);
        start(n) = Complex(re, im);
    }
    start.normalize();

    std::optional<double> previous;
    GroundStateResult best;
    best.energy = std::numeric_limits<double>::infinity();
    std::size_t steps = 0;

    while (true) {
        std::vector<Vec> basis;
        basis.reserve(static_cast<std::size_t>(krylov));
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.push_back(start);
        bool invariant = false;
        for (Eigen::Index k = 0; k < krylov; ++k) {
            Vec w = apply_h(model, basis.back());
            ++steps;
            const double a = basis.back().dot(w).real();
            alpha.push_back(a);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                for (const Vec &q : basis) {
                    w -= q.dot(w) * q;
                }
            }
            const double b = w.norm();
            if (b < 1e-12 * std::max(1.0, std::abs(a))) {
                invariant = true;
                break;
            }
            if (k + 1 == krylov) {
                break;
            }
            beta.push_back(b);
            basis.emplace_back(w / b);
        }

        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index k = 0; k < m; ++k) {
            t(k, k) = alpha[static_cast<std::size_t>(k)];
            if (k + 1 < m) {
                t(k, k + 1) = beta[static_cast<std::size_t>(k)];
                t(k + 1, k) = beta[static_cast<std::size_t>(k)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
        const double energy = tri.eigenvalues()(0);
        const Eigen::VectorXd coeff = tri.eigenvectors().col(0);
        Vec ritz = Vec::Zero(dim);
        for (Eigen::Index k = 0; k < m; ++k) {
            ritz += coeff(k) * basis[static_cast<std::size_t>(k)];
        }
        ritz.normalize();
        const double residual = (apply_h(model, ritz) - energy * ritz).norm();

        if (energy < best.energy) {
            best.energy = energy;
            best.state = to_state(num_sites, ritz);
            best.residual = residual;
        }
        best.iterations = steps;

        if (invariant ||
            (previous && std::abs(energy - *previous) < options.tol)) {
            GroundStateResult out;
            out.energy = energy;
            out.state = to_state(num_sites, ritz);
            out.iterations = steps;
            out.residual = residual;
            return out;
        }
        if (steps >= options.max_iter) {
            throw LanczosError("lanczos_ground_state: no convergence after " +
                                   std::to_string(steps) + " steps",
                               best);
        }
        previous = energy;
        start = ritz;
    }
}

StateVector translate_sites(const StateVector &state, std::size_t shift) {
    const std::size_t num_sites = state.num_qubits();
    if (num_sites == 0) {
        return state;
    }
    shift %= num_sites;
    std::vector<Complex> out(state.dimension());
    for (std::size_t n = 0; n < state.dimension(); ++n) {
        std::size_t m = 0;
        for (std::size_t i = 0; i < num_sites; ++i) {
            if ((n >> i) & 1U) {
                m |= std::size_t{1} << ((i + shift) % num_sites);
            }
        }
        out[m] = state[n];
    }
    return StateVector(num_sites, std::move(out));
}

} // namespace aqce
