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

#include "aqce/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace aqce {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a non-empty "
                                                 "square matrix, got " +
                             std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
}

void require_finite(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) {
        throw NumericError(std::string(what) + ": non-finite entries");
    }
}

// Eigenvalues on the unit circle closer than this are treated as one
// eigenspace when building the real basis.
constexpr double kClusterTol = 1e-7;

} // namespace

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (!std::isfinite(m(r, c).real()) ||
                !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const ComplexMatrix &m) {
    require_square(m, "unitarity_deviation");
    const auto n = m.rows();
    return (m.adjoint() * m - ComplexMatrix::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

double hermiticity_deviation(const ComplexMatrix &m) {
    require_square(m, "hermiticity_deviation");
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double best_phase(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Complex t = (a.adjoint() * b).trace();
    if (std::abs(t) == 0.0) {
        return 0.0;
    }
    return std::arg(t);
}

double max_abs_diff_up_to_phase(const ComplexMatrix &a,
                                const ComplexMatrix &b) {
    const double phi = best_phase(a, b);
    return max_abs_diff(std::polar(1.0, phi) * a, b);
}

double wrap_angle(double a) {
    constexpr double pi = std::numbers::pi;
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) {
        r += 2.0 * pi;
    }
    return r;
}

SVDResult svd(const ComplexMatrix &m) {
    require_square(m, "svd");
    require_finite(m, "svd");
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU |
                                                  Eigen::ComputeFullV);
    SVDResult out;
    const auto &s = solver.singularValues();
    out.singular.assign(s.data(), s.data() + s.size());
    out.left = solver.matrixU();
    out.right = solver.matrixV().adjoint();
    return out;
}

EigResult hermitian_eig(const ComplexMatrix &m) {
    require_square(m, "hermitian_eig");
    require_finite(m, "hermitian_eig");
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eig: eigensolver did not converge");
    }
    const auto n = sym.rows();
    EigResult out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] =
            solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

UnitaryEigResult unitary_eig(const ComplexMatrix &m) {
    require_square(m, "unitary_eig");
    require_finite(m, "unitary_eig");
    if (unitarity_deviation(m) > tol::kUnitaryInput) {
        throw NumericError("unitary_eig: input is not unitary (deviation " +
                           std::to_string(unitarity_deviation(m)) + ")");
    }
    const auto n = m.rows();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
    if (solver.info() != Eigen::Success) {
        throw NumericError("unitary_eig: eigensolver did not converge");
    }
    const auto &vals = solver.eigenvalues();
    const auto &vecs = solver.eigenvectors();

    // Group indices into clusters of (numerically) equal eigenvalues.
    std::vector<int> cluster(static_cast<std::size_t>(n), -1);
    int num_clusters = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (cluster[static_cast<std::size_t>(k)] >= 0) {
            continue;
        }
        cluster[static_cast<std::size_t>(k)] = num_clusters;
        for (Eigen::Index l = k + 1; l < n; ++l) {
            if (cluster[static_cast<std::size_t>(l)] < 0 &&
                std::abs(vals(l) - vals(k)) < kClusterTol) {
                cluster[static_cast<std::size_t>(l)] = num_clusters;
            }
        }
        ++num_clusters;
    }

    RealMatrix basis(n, n);
    Eigen::Index filled = 0;
    for (int c = 0; c < num_clusters; ++c) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (cluster[static_cast<std::size_t>(k)] == c) {
                members.push_back(k);
            }
        }
        const auto d = static_cast<Eigen::Index>(members.size());
        RealMatrix parts(n, 2 * d);
        for (Eigen::Index t = 0; t < d; ++t) {
            parts.col(2 * t) = vecs.col(members[static_cast<std::size_t>(t)])
                                   .real();
            parts.col(2 * t + 1) =
                vecs.col(members[static_cast<std::size_t>(t)]).imag();
        }
        // The column space of [Re V, Im V] is the real form of the
        // eigenspace; its leading d left singular vectors span it.
        Eigen::JacobiSVD<RealMatrix> rsvd(parts, Eigen::ComputeFullU);
        basis.middleCols(filled, d) = rsvd.matrixU().leftCols(d);
        filled += d;
    }

    // Clean up residual cross-cluster non-orthogonality.
    Eigen::HouseholderQR<RealMatrix> qr(basis);
    RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (q.col(k).dot(basis.col(k)) < 0) {
            q.col(k) = -q.col(k);
        }
    }

    UnitaryEigResult out;
    out.vectors = q;
    out.values.resize(static_cast<std::size_t>(n));
    const ComplexMatrix qc = q.cast<Complex>();
    const ComplexMatrix diag = qc.transpose() * m * qc;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex v = diag(k, k);
        out.values[static_cast<std::size_t>(k)] = v / std::abs(v);
    }
    return out;
}

ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols,
                                    std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64 &rng) {
    const ComplexMatrix g = random_complex_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const auto ni = static_cast<Eigen::Index>(n);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(ni, ni);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < ni; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

} // namespace aqce
