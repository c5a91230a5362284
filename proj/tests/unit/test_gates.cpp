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

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "aqce/gates.hpp"
#include "aqce/numerics.hpp"

using namespace aqce;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent build of the documented 15-angle sequence with plain
// Kronecker products (qubit i is the low bit of the bond index).
Matrix4c kron(const Matrix2c &hi, const Matrix2c &lo) {
    Matrix4c out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.block(2 * a, 2 * b, 2, 2) = hi(a, b) * lo;
        }
    }
    return out;
}

Matrix2c rot(const Matrix2c &p, double t) {
    return std::cos(t / 2) * Matrix2c::Identity() -
           Complex(0.0, 1.0) * std::sin(t / 2) * p;
}

Matrix4c sequence_oracle(const std::array<double, 15> &t) {
    Matrix2c x;
    Matrix2c y;
    Matrix2c z;
    Matrix2c h;
    Matrix2c s;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s << 1, 0, 0, Complex(0, 1);
    const Matrix2c id = Matrix2c::Identity();
    const auto on_i = [&](const Matrix2c &a) { return kron(id, a); };
    const auto on_j = [&](const Matrix2c &a) { return kron(a, id); };
    Matrix4c cx = Matrix4c::Zero();
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            cx(si + 2 * (sj ^ si), si + 2 * sj) = 1.0;
        }
    }
    const std::vector<Matrix4c> ops{
        on_i(rot(z, t[0])), on_i(rot(y, t[1])), on_i(rot(z, t[2])),
        on_j(rot(z, t[3])), on_j(rot(y, t[4])), on_j(rot(z, t[5])),
        cx, on_i(rot(x, -2 * t[6])), on_i(h), on_j(rot(z, -2 * t[8])),
        cx, on_j(rot(z, 2 * t[7])), on_i(s), on_i(h),
        cx, on_i(rot(x, -kPi / 2)), on_j(rot(x, kPi / 2)),
        on_i(rot(z, t[9])), on_i(rot(y, t[10])), on_i(rot(z, t[11])),
        on_j(rot(z, t[12])), on_j(rot(y, t[13])), on_j(rot(z, t[14]))};
    Matrix4c m = Matrix4c::Identity();
    for (const auto &g : ops) {
        m = g * m;
    }
    return m;
}

} // namespace

TEST_CASE("Euler angles round trip", "[gates]") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        const Matrix2c v = haar_unitary(2, rng);
        const EulerAngles e = euler_decompose(v);
        CHECK(max_abs_diff(euler_matrix(e), v) < 1e-12);
        CHECK(e.theta1 > -kPi);
        CHECK(e.theta1 <= kPi);
        CHECK(e.theta3 > -kPi);
        CHECK(e.theta3 <= kPi);
        CHECK(e.theta2 >= 0.0);
        CHECK(e.theta2 <= kPi + 1e-12);
        CHECK(e.theta0 > -2 * kPi);
        CHECK(e.theta0 <= 2 * kPi);
    }
    // Diagonal and anti-diagonal special cases.
    for (const Matrix2c &v : {Matrix2c(rz(0.7)), Matrix2c(ry(kPi)),
                              Matrix2c(-Matrix2c::Identity()), hadamard()}) {
        CHECK(max_abs_diff(euler_matrix(euler_decompose(v)), v) < 1e-12);
    }
}

TEST_CASE("magic basis turns real vectors into maximally entangled states",
          "[gates]") {
    const Matrix4c &m = magic_basis();
    CHECK(unitarity_deviation(m) < 1e-15);
    std::mt19937_64 rng(52);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Vector4d r;
        for (int k = 0; k < 4; ++k) {
            r(k) = g(rng);
        }
        r.normalize();
        const Eigen::Vector4cd psi = m * r.cast<Complex>();
        // |a00 a11 - a01 a10| = 1/2 for a maximally entangled pair.
        const Complex c = psi(0) * psi(3) - psi(1) * psi(2);
        CHECK_THAT(std::abs(c), WithinAbs(0.5, 1e-12));
    }
    // Local gates become real orthogonal matrices in the magic frame.
    const Matrix4c loc = local_product(haar_unitary(2, rng), haar_unitary(2, rng));
    const Matrix4c in_magic = magic_transform(loc, MagicDirection::kToMagic);
    const double det_phase = std::arg(in_magic.determinant());
    const Matrix4c fixed = std::polar(1.0, -det_phase / 4) * in_magic;
    CHECK(fixed.imag().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs_diff(magic_transform(in_magic, MagicDirection::kFromMagic), loc) <
          1e-14);
}

TEST_CASE("entangler is diagonal in the magic basis", "[gates]") {
    const Matrix4c d = entangler({0.3, -0.2, 0.9});
    CHECK(unitarity_deviation(d) < 1e-14);
    const Matrix4c m = magic_transform(d, MagicDirection::kToMagic);
    CHECK((m - Matrix4c(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gate sequence matches an independent build", "[gates]") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int trial = 0; trial < 50; ++trial) {
        GateParams p;
        for (double &t : p.theta) {
            t = ang(rng);
        }
        CHECK(max_abs_diff(reconstruct_gate(p), sequence_oracle(p.theta)) < 1e-13);
    }
}

TEST_CASE("canonical decomposition round trips Haar unitaries", "[gates]") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 500; ++trial) {
        const Matrix4c u = haar_unitary(4, rng);
        const CanonicalForm cf = kak_decompose(u);
        CHECK(max_abs_diff(reconstruct_canonical(cf), u) < 1e-10);
        const GateParams p = to_gate_params(cf);
        CHECK(max_abs_diff(reconstruct_gate(p), u) < 1e-10);
        CHECK(max_abs_diff_up_to_phase(sequence_oracle(p.theta), u) < 1e-10);
    }
}

TEST_CASE("decomposition handles degenerate and local gates", "[gates]") {
    std::mt19937_64 rng(55);
    std::vector<Matrix4c> cases{Matrix4c::Identity(), cnot(), swap_gate(),
                                builtin_gate("iswap"), builtin_gate("sqrt-swap"),
                                builtin_gate("cz"),
                                local_product(haar_unitary(2, rng), haar_unitary(2, rng)),
                                entangler({kPi / 4, 0.0, 0.0}),
                                entangler({0.1, 0.1, 0.1})};
    for (const auto &u : cases) {
        const GateParams p = decompose_gate(u);
        CHECK(max_abs_diff(reconstruct_gate(p), u) < 1e-10);
    }
}

TEST_CASE("entangling coordinates of named gates", "[gates]") {
    const auto coords = [](const Matrix4c &u) {
        return weyl_canonicalize(kak_decompose(u).alphas);
    };
    const auto near = [](const std::array<double, 3> &a,
                         const std::array<double, 3> &b) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (std::abs(a[k] - b[k]) > 1e-9) {
                return false;
            }
        }
        return true;
    };
    const double q = kPi / 4;
    CHECK(near(coords(Matrix4c::Identity()), {0, 0, 0}));
    CHECK(near(coords(cnot()), {q, 0, 0}));
    CHECK(near(coords(builtin_gate("cz")), {q, 0, 0}));
    CHECK(near(coords(swap_gate()), {q, q, q}));
    CHECK(near(coords(builtin_gate("iswap")), {q, q, 0}));
    CHECK(near(coords(builtin_gate("sqrt-swap")), {q / 2, q / 2, q / 2}));
    // Local dressing does not move the coordinates.
    std::mt19937_64 rng(56);
    const Matrix4c dressed = local_product(haar_unitary(2, rng), haar_unitary(2, rng)) *
                             cnot() *
                             local_product(haar_unitary(2, rng), haar_unitary(2, rng));
    CHECK(near(coords(dressed), {q, 0, 0}));
}

TEST_CASE("decomposition rejects non-unitary input", "[gates]") {
    Matrix4c m = Matrix4c::Identity();
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(kak_decompose(m), NumericError);
    CHECK_THROWS_AS(euler_decompose(2.0 * Matrix2c::Identity()), NumericError);
}

TEST_CASE("gate parameters and matrices serialize", "[gates][io]") {
    std::mt19937_64 rng(57);
    const Matrix4c u = haar_unitary(4, rng);
    const GateParams p = decompose_gate(u);
    const GateParams bare = gate_params_from_json(gate_params_to_json(p));
    CHECK(bare.global_phase == 0.0);
    CHECK(bare.theta == p.theta);
    const GateParams full = gate_params_from_json(gate_params_to_json(p, true));
    CHECK(full.global_phase == p.global_phase);
    CHECK(max_abs_diff(reconstruct_gate(full), u) < 1e-10);
    CHECK(max_abs_diff(matrix_from_json(matrix_to_json(u)), u) == 0.0);
    CHECK_THROWS(gate_params_from_json(nlohmann::json::array({1, 2, 3})));
    CHECK_THROWS(matrix_from_json(nlohmann::json::array({1.0})));
    CHECK_THROWS_AS(builtin_gate("toffoli"), InputError);
}
