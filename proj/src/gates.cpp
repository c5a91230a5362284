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

#include "aqce/gates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "aqce/numerics.hpp"

namespace aqce {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// Below this magnitude an entry of a 2x2 unitary counts as zero for the
// Euler branch selection.
constexpr double kEulerZero = 1e-13;

double wrap_4pi(double a) {
    double r = std::remainder(a, 4.0 * kPi);
    if (r <= -2.0 * kPi) {
        r += 4.0 * kPi;
    }
    return r;
}

void require_unitary(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) {
        throw NumericError(std::string(what) + ": non-finite entries");
    }
    const double dev = unitarity_deviation(m);
    if (!(dev <= tol::kUnitaryInput)) {
        throw NumericError(std::string(what) +
                           ": input is not unitary (deviation " +
                           std::to_string(dev) + ")");
    }
}

/// v = a (x) b with v[s_i + 2 s_j] = a[s_i] b[s_j]; a is unit norm.
std::pair<Eigen::Vector2cd, Eigen::Vector2cd>
factor_product(const Eigen::Vector4cd &v) {
    Matrix2c mat;
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            mat(si, sj) = v(si + 2 * sj);
        }
    }
    const int col = mat.col(0).norm() >= mat.col(1).norm() ? 0 : 1;
    Eigen::Vector2cd a = mat.col(col);
    a.normalize();
    const Eigen::Vector2cd b = (a.adjoint() * mat).transpose();
    return {a, b};
}

struct LocalFrame {
    Matrix2c r_i;
    Matrix2c r_j;
    std::array<double, 4> xi{};
};

/**
 * Given four maximally entangled states psi_k that are a local image of the
 * magic basis, find R = R_i R_j and phases xi_k with
 * R psi_k = e^{-i xi_k} phi_k.
 */
LocalFrame local_frame(const Matrix4c &psi) {
    const Matrix4c &phi = magic_basis();
    const double s = std::sqrt(0.5);
    const Eigen::Vector4cd mu = s * (psi.col(0) + kI * psi.col(1));
    const Eigen::Vector4cd nu = s * (psi.col(0) - kI * psi.col(1));
    const auto [a, b] = factor_product(mu);
    const auto [abar, bbar] = factor_product(nu);

    // <a bbar | psi_2> = e^{i delta} / sqrt(2) fixes the relative phase.
    Eigen::Vector4cd a_bbar;
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            a_bbar(si + 2 * sj) = a(si) * bbar(sj);
        }
    }
    const Complex c1 = a_bbar.dot(psi.col(2));
    const double delta = std::arg(c1);

    LocalFrame out;
    out.r_i.row(0) = a.adjoint();
    out.r_i.row(1) = std::polar(1.0, delta) * abar.adjoint();
    out.r_j.row(0) = b.adjoint();
    out.r_j.row(1) = std::polar(1.0, -delta) * bbar.adjoint();

    const Matrix4c r = local_product(out.r_i, out.r_j);
    for (int k = 0; k < 4; ++k) {
        const Complex c = phi.col(k).dot(r * psi.col(k));
        out.xi[static_cast<std::size_t>(k)] = -std::arg(c);
    }
    return out;
}

Matrix4c bare_sequence(const std::array<double, 15> &t) {
    const Matrix4c cx = cnot();
    const Matrix4c steps[] = {
        on_first(rz(t[0])),  on_first(ry(t[1])),  on_first(rz(t[2])),
        on_second(rz(t[3])), on_second(ry(t[4])), on_second(rz(t[5])),
        cx,
        on_first(rx(-2.0 * t[6])),
        on_first(hadamard()),
        on_second(rz(-2.0 * t[8])),
        cx,
        on_second(rz(2.0 * t[7])),
        on_first(phase_s()),
        on_first(hadamard()),
        cx,
        on_first(rx(-kPi / 2.0)),
        on_second(rx(kPi / 2.0)),
        on_first(rz(t[9])),  on_first(ry(t[10])),  on_first(rz(t[11])),
        on_second(rz(t[12])), on_second(ry(t[13])), on_second(rz(t[14])),
    };
    Matrix4c m = Matrix4c::Identity();
    for (const Matrix4c &g : steps) {
        m = g * m;
    }
    return m;
}

} // namespace

Matrix2c rx(double t) {
    Matrix2c m;
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    m << c, -kI * s, -kI * s, c;
    return m;
}

Matrix2c ry(double t) {
    Matrix2c m;
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    m << c, -s, s, c;
    return m;
}

Matrix2c rz(double t) {
    Matrix2c m;
    m << std::polar(1.0, -t / 2.0), 0.0, 0.0, std::polar(1.0, t / 2.0);
    return m;
}

Matrix2c hadamard() {
    Matrix2c m;
    const double s = std::sqrt(0.5);
    m << s, s, s, -s;
    return m;
}

Matrix2c phase_s() {
    Matrix2c m;
    m << 1.0, 0.0, 0.0, kI;
    return m;
}

Matrix4c local_product(const Matrix2c &a, const Matrix2c &b) {
    return Eigen::kroneckerProduct(b, a).eval();
}

Matrix4c on_first(const Matrix2c &a) {
    return local_product(a, Matrix2c::Identity());
}

Matrix4c on_second(const Matrix2c &b) {
    return local_product(Matrix2c::Identity(), b);
}

Matrix4c cnot() {
    Matrix4c m = Matrix4c::Zero();
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            m(si + 2 * (sj ^ si), si + 2 * sj) = 1.0;
        }
    }
    return m;
}

Matrix4c swap_gate() {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 1.0;
    m(2, 1) = 1.0;
    m(1, 2) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

Matrix4c entangler(const std::array<double, 3> &alphas) {
    const auto [a1, a2, a3] = alphas;
    // XX, YY, ZZ are simultaneously diagonal in the magic basis.
    const double lambda[4] = {a1 - a2 + a3, -a1 + a2 + a3, -a1 - a2 - a3,
                              a1 + a2 - a3};
    Eigen::Vector4cd d;
    for (int k = 0; k < 4; ++k) {
        d(k) = std::polar(1.0, -lambda[k]);
    }
    const Matrix4c &m = magic_basis();
    return m * d.asDiagonal() * m.adjoint();
}

Matrix2c euler_matrix(const EulerAngles &e) {
    return std::polar(1.0, -e.theta0 / 2.0) * rz(e.theta3) * ry(e.theta2) *
           rz(e.theta1);
}

EulerAngles euler_decompose(const Matrix2c &v) {
    require_unitary(v, "euler_decompose");
    EulerAngles e;
    const double m00 = std::abs(v(0, 0));
    const double m10 = std::abs(v(1, 0));
    if (m10 < kEulerZero) {
        e.theta2 = 0.0;
        e.theta3 = 0.0;
        const double a00 = std::arg(v(0, 0));
        e.theta1 = wrap_angle(std::arg(v(1, 1)) - a00);
        e.theta0 = wrap_4pi(-2.0 * a00 - e.theta1);
        return e;
    }
    if (m00 < kEulerZero) {
        e.theta2 = kPi;
        e.theta3 = 0.0;
        const double a10 = std::arg(v(1, 0));
        e.theta1 = wrap_angle(std::arg(-v(0, 1)) - a10);
        e.theta0 = wrap_4pi(-2.0 * a10 - e.theta1);
        return e;
    }
    const double a00 = std::arg(v(0, 0));
    const double a10 = std::arg(v(1, 0));
    const double a11 = std::arg(v(1, 1));
    e.theta2 = 2.0 * std::atan2(m10, m00);
    e.theta3 = wrap_angle(a10 - a00);
    e.theta1 = wrap_angle(a11 - a00 - e.theta3);
    e.theta0 = wrap_4pi(-2.0 * a00 - e.theta1 - e.theta3);
    return e;
}

const Matrix4c &magic_basis() {
    static const Matrix4c m = [] {
        Matrix4c b;
        // rows: n = 0 |00>, 1 |10>, 2 |01>, 3 |11> written sigma_i sigma_j
        b << 1.0, -kI, 0.0, 0.0,  //
            0.0, 0.0, -1.0, -kI,  //
            0.0, 0.0, 1.0, -kI,   //
            1.0, kI, 0.0, 0.0;
        return Matrix4c(b * std::sqrt(0.5));
    }();
    return m;
}

Matrix4c magic_transform(const Matrix4c &u, MagicDirection direction) {
    const Matrix4c &m = magic_basis();
    if (direction == MagicDirection::kToMagic) {
        return m.adjoint() * u * m;
    }
    return m * u * m.adjoint();
}

CanonicalForm kak_decompose(const Matrix4c &u) {
    require_unitary(u, "kak_decompose");
    const Matrix4c &magic = magic_basis();
    const Matrix4c ub = magic_transform(u, MagicDirection::kToMagic);
    const Matrix4c w = ub.transpose() * ub;

    const UnitaryEigResult eig = unitary_eig(w);
    Eigen::Matrix4d o = eig.vectors;
    if (o.determinant() < 0.0) {
        o.col(0) = -o.col(0);
    }
    std::array<double, 4> eps{};
    for (int k = 0; k < 4; ++k) {
        eps[static_cast<std::size_t>(k)] =
            std::arg(eig.values[static_cast<std::size_t>(k)]) / 2.0;
    }

    // ub o_k = e^{i eps_k} o'_k with o'_k real.
    Eigen::Vector4cd phase_fix;
    for (int k = 0; k < 4; ++k) {
        phase_fix(k) = std::polar(1.0, -eps[static_cast<std::size_t>(k)]);
    }
    const Matrix4c op_c = ub * o.cast<Complex>() * phase_fix.asDiagonal();
    Eigen::Matrix4d op = op_c.real();
    if (op.determinant() < 0.0) {
        op.col(0) = -op.col(0);
        eps[0] += kPi;
    }

    const Matrix4c psi = magic * o.cast<Complex>();
    const Matrix4c psi_p = magic * op.cast<Complex>();
    const LocalFrame before = local_frame(psi);
    const LocalFrame after = local_frame(psi_p);

    // e^{-i(a0 + lambda_k)} = e^{-i t_k}, t_k = xi'_k - xi_k - eps_k.
    std::array<double, 4> t{};
    for (std::size_t k = 0; k < 4; ++k) {
        t[k] = after.xi[k] - before.xi[k] - eps[k];
    }

    std::array<double, 4> best{};
    double best_cost = std::numeric_limits<double>::infinity();
    double best_residual = std::numeric_limits<double>::infinity();
    for (int n0 = -2; n0 <= 2; ++n0) {
        for (int n1 = -2; n1 <= 2; ++n1) {
            for (int n2 = -2; n2 <= 2; ++n2) {
                for (int n3 = -2; n3 <= 2; ++n3) {
                    const double s0 = t[0] + 2.0 * kPi * n0;
                    const double s1 = t[1] + 2.0 * kPi * n1;
                    const double s2 = t[2] + 2.0 * kPi * n2;
                    const double s3 = t[3] + 2.0 * kPi * n3;
                    const std::array<double, 4> al = {
                        (s0 + s1 + s2 + s3) / 4.0,
                        (s0 - s1 - s2 + s3) / 4.0,
                        (-s0 + s1 - s2 + s3) / 4.0,
                        (s0 + s1 - s2 - s3) / 4.0,
                    };
                    const double lam[4] = {al[1] - al[2] + al[3],
                                           -al[1] + al[2] + al[3],
                                           -al[1] - al[2] - al[3],
                                           al[1] + al[2] - al[3]};
                    const double ss[4] = {s0, s1, s2, s3};
                    double residual = 0.0;
                    for (int k = 0; k < 4; ++k) {
                        residual = std::max(
                            residual,
                            std::abs(wrap_angle(al[0] + lam[k] - ss[k])));
                    }
                    const double cost = std::abs(al[1]) + std::abs(al[2]) +
                                        std::abs(al[3]);
                    if (residual < tol::kPhaseSolve &&
                        cost < best_cost - 1e-12) {
                        best_cost = cost;
                        best = al;
                        best_residual = residual;
                    }
                }
            }
        }
    }
    if (!(best_residual < tol::kPhaseSolve)) {
        throw InternalError("kak_decompose: no integer offsets satisfy the "
                            "phase equations");
    }

    CanonicalForm cf;
    cf.alpha0 = best[0];
    cf.alphas = {best[1], best[2], best[3]};
    cf.r_i = euler_decompose(before.r_i);
    cf.r_j = euler_decompose(before.r_j);
    cf.rp_i = euler_decompose(after.r_i.adjoint());
    cf.rp_j = euler_decompose(after.r_j.adjoint());

    const double err = max_abs_diff(reconstruct_canonical(cf), u);
    if (!(err < tol::kKakReconstruction)) {
        throw InternalError("kak_decompose: reconstruction error " +
                            std::to_string(err));
    }
    return cf;
}

Matrix4c reconstruct_canonical(const CanonicalForm &cf) {
    const Matrix4c before =
        local_product(euler_matrix(cf.r_i), euler_matrix(cf.r_j));
    const Matrix4c after =
        local_product(euler_matrix(cf.rp_i), euler_matrix(cf.rp_j));
    return std::polar(1.0, -cf.alpha0) * after * entangler(cf.alphas) *
           before;
}

std::array<double, 3> weyl_canonicalize(const std::array<double, 3> &alphas) {
    constexpr double quarter = kPi / 4.0;
    constexpr double eps = 1e-9;
    std::array<double, 3> a{};
    for (std::size_t k = 0; k < 3; ++k) {
        // Shifts by pi/2 are local: exp(-i pi/2 PP) = -i PP.
        double r = std::remainder(alphas[k], kPi / 2.0);
        if (r <= -quarter + eps) {
            r += kPi / 2.0;
        }
        a[k] = r;
    }
    std::sort(a.begin(), a.end(), [](double x, double y) {
        return std::abs(x) > std::abs(y);
    });
    // Conjugating by a single-qubit Pauli flips the sign of two angles.
    if (a[0] < 0.0) {
        a[0] = -a[0];
        a[2] = -a[2];
    }
    if (a[1] < 0.0) {
        a[1] = -a[1];
        a[2] = -a[2];
    }
    if (std::abs(a[0] - quarter) < eps) {
        a[2] = std::abs(a[2]);
    }
    return a;
}

GateParams to_gate_params(const CanonicalForm &cf) {
    GateParams p;
    const auto put = [&p](std::size_t offset, const EulerAngles &e) {
        p.theta[offset] = e.theta1;
        p.theta[offset + 1] = e.theta2;
        p.theta[offset + 2] = e.theta3;
    };
    put(0, cf.r_i);
    put(3, cf.r_j);
    p.theta[6] = -cf.alphas[0];
    p.theta[7] = -cf.alphas[1];
    p.theta[8] = -cf.alphas[2];
    put(9, cf.rp_i);
    put(12, cf.rp_j);
    p.global_phase = 0.0;
    const Matrix4c target = reconstruct_canonical(cf);
    p.global_phase = best_phase(bare_sequence(p.theta), target);
    return p;
}

Matrix4c reconstruct_gate(const GateParams &params) {
    for (double t : params.theta) {
        if (!std::isfinite(t)) {
            throw NumericError("reconstruct_gate: non-finite angle");
        }
    }
    if (!std::isfinite(params.global_phase)) {
        throw NumericError("reconstruct_gate: non-finite global phase");
    }
    return std::polar(1.0, params.global_phase) * bare_sequence(params.theta);
}

GateParams decompose_gate(const Matrix4c &u) {
    return to_gate_params(kak_decompose(u));
}

nlohmann::json gate_params_to_json(const GateParams &params,
                                   bool include_phase) {
    nlohmann::json arr = nlohmann::json::array();
    for (double t : params.theta) {
        arr.push_back(t);
    }
    if (!include_phase) {
        return arr;
    }
    return {{"theta", arr}, {"global_phase", params.global_phase}};
}

GateParams gate_params_from_json(const nlohmann::json &j) {
    GateParams p;
    const nlohmann::json *arr = &j;
    if (j.is_object()) {
        if (!j.contains("theta")) {
            throw InputError("gate parameters: missing 'theta'");
        }
        arr = &j.at("theta");
        if (j.contains("global_phase")) {
            p.global_phase = j.at("global_phase").get<double>();
        }
    }
    if (!arr->is_array() || arr->size() != 15) {
        throw InputError("gate parameters: expected an array of 15 numbers");
    }
    for (std::size_t k = 0; k < 15; ++k) {
        if (!(*arr)[k].is_number()) {
            throw InputError("gate parameters: entry " + std::to_string(k) +
                             " is not a number");
        }
        p.theta[k] = (*arr)[k].get<double>();
    }
    return p;
}

nlohmann::json matrix_to_json(const Matrix4c &m) {
    nlohmann::json arr = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            arr.push_back(m(r, c).real());
            arr.push_back(m(r, c).imag());
        }
    }
    return arr;
}

Matrix4c matrix_from_json(const nlohmann::json &j) {
    const nlohmann::json *arr = &j;
    if (j.is_object() && j.contains("matrix")) {
        arr = &j.at("matrix");
    }
    if (!arr->is_array() || arr->size() != 32) {
        throw InputError("matrix: expected an array of 32 numbers "
                         "(re, im pairs, row-major)");
    }
    Matrix4c m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const auto k = static_cast<std::size_t>(2 * (4 * r + c));
            if (!(*arr)[k].is_number() || !(*arr)[k + 1].is_number()) {
                throw InputError("matrix: non-numeric entry");
            }
            m(r, c) = Complex((*arr)[k].get<double>(),
                              (*arr)[k + 1].get<double>());
        }
    }
    return m;
}

Matrix4c builtin_gate(const std::string &name) {
    if (name == "identity") {
        return Matrix4c::Identity();
    }
    if (name == "cnot") {
        return cnot();
    }
    if (name == "swap") {
        return swap_gate();
    }
    if (name == "cz") {
        Matrix4c m = Matrix4c::Identity();
        m(3, 3) = -1.0;
        return m;
    }
    if (name == "iswap") {
        Matrix4c m = Matrix4c::Zero();
        m(0, 0) = 1.0;
        m(1, 2) = kI;
        m(2, 1) = kI;
        m(3, 3) = 1.0;
        return m;
    }
    if (name == "sqrt-swap") {
        Matrix4c m = Matrix4c::Zero();
        const Complex p(0.5, 0.5);
        const Complex q(0.5, -0.5);
        m(0, 0) = 1.0;
        m(1, 1) = p;
        m(1, 2) = q;
        m(2, 1) = q;
        m(2, 2) = p;
        m(3, 3) = 1.0;
        return m;
    }
    throw InputError("unknown builtin gate '" + name +
                     "' (expected identity, cnot, swap, cz, iswap, "
                     "sqrt-swap)");
}

} // namespace aqce
