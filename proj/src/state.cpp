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

#include "aqce/state.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "aqce/numerics.hpp"
#include "aqce/simd/kernels.hpp"

namespace aqce {

namespace {

using RowMajor4c = Eigen::Matrix<Complex, 4, 4, Eigen::RowMajor>;

constexpr std::size_t kMaxQubits = 30;

void require_same_size(const StateVector &a, const StateVector &b,
                       const char *what) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError(std::string(what) + ": qubit counts differ (" +
                             std::to_string(a.num_qubits()) + " vs " +
                             std::to_string(b.num_qubits()) + ")");
    }
}

void require_pair_capacity(const StateVector &s, const char *what) {
    if (s.num_qubits() < 2) {
        throw DimensionError(std::string(what) +
                             ": need at least two qubits");
    }
}

std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        return __builtin_bswap64(v);
    }
    return v;
}

} // namespace

StateVector::StateVector(std::size_t num_qubits)
    : StateVector(num_qubits, {}) {}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits > kMaxQubits) {
        throw DimensionError("StateVector: too many qubits (" +
                             std::to_string(num_qubits) + ")");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (amps_.empty()) {
        amps_.assign(dim, Complex{0.0, 0.0});
        amps_[0] = 1.0;
    } else if (amps_.size() != dim) {
        throw DimensionError("StateVector: expected " + std::to_string(dim) +
                             " amplitudes, got " +
                             std::to_string(amps_.size()));
    }
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw DimensionError("StateVector::basis: index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::random(std::size_t num_qubits,
                                std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = Complex(re, im);
    }
    StateVector s(num_qubits, std::move(amps));
    s.normalize();
    return s;
}

double StateVector::norm() const {
    return std::sqrt(
        simd::active_kernels().norm_squared(amps_.data(), amps_.size()));
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0 || !std::isfinite(n)) {
        throw NumericError("StateVector::normalize: zero or non-finite norm");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

void validate_bond(const Bond &bond, std::size_t num_qubits) {
    if (bond.first == bond.second) {
        throw DimensionError("bond (" + std::to_string(bond.first) + ", " +
                             std::to_string(bond.second) +
                             "): qubits must differ");
    }
    if (bond.first >= num_qubits || bond.second >= num_qubits) {
        throw DimensionError("bond (" + std::to_string(bond.first) + ", " +
                             std::to_string(bond.second) +
                             "): qubit index out of range for L=" +
                             std::to_string(num_qubits));
    }
}

void apply_two_qubit_inplace(StateVector &state, const Matrix4c &u,
                             const Bond &bond, bool adjoint,
                             bool check_unitary) {
    validate_bond(bond, state.num_qubits());
    if (check_unitary) {
        const double dev = unitarity_deviation(u);
        if (!(dev <= tol::kUnitaryInput)) {
            throw NumericError("apply_two_qubit: matrix is not unitary "
                               "(deviation " +
                               std::to_string(dev) + ")");
        }
    }
    RowMajor4c m;
    if (adjoint) {
        m = u.adjoint();
    } else {
        m = u;
    }
    simd::active_kernels().apply_two_qubit(state.data(), state.num_qubits(),
                                           bond.first, bond.second, m.data());
}

StateVector apply_two_qubit(const StateVector &state, const Matrix4c &u,
                            const Bond &bond, bool adjoint) {
    StateVector out = state;
    apply_two_qubit_inplace(out, u, bond, adjoint);
    return out;
}

Complex overlap(const StateVector &bra, const StateVector &ket) {
    require_same_size(bra, ket, "overlap");
    return simd::active_kernels().inner_product(bra.data(), ket.data(),
                                                bra.dimension());
}

FidelityTensor fidelity_tensor(const StateVector &ket, const StateVector &bra,
                               const Bond &bond) {
    require_same_size(ket, bra, "fidelity_tensor");
    require_pair_capacity(ket, "fidelity_tensor");
    validate_bond(bond, ket.num_qubits());
    RowMajor4c out;
    simd::active_kernels().fidelity_tensor(ket.data(), bra.data(),
                                           ket.num_qubits(), bond.first,
                                           bond.second, out.data());
    return {bond, out};
}

Matrix2c pauli(int index) {
    Matrix2c p;
    const Complex i(0.0, 1.0);
    switch (index) {
    case 0:
        p << 1, 0, 0, 1;
        break;
    case 1:
        p << 0, 1, 1, 0;
        break;
    case 2:
        p << 0, -i, i, 0;
        break;
    case 3:
        p << 1, 0, 0, -1;
        break;
    default:
        throw InputError("pauli: index must be in 0..3, got " +
                         std::to_string(index));
    }
    return p;
}

Complex pauli_overlap(const StateVector &bra, const StateVector &ket,
                      const Bond &bond, int a, int b) {
    require_same_size(bra, ket, "pauli_overlap");
    validate_bond(bond, ket.num_qubits());
    if (a < 0 || a > 3 || b < 0 || b > 3) {
        throw InputError("pauli_overlap: Pauli indices must be in 0..3");
    }
    const std::size_t bit_i = std::size_t{1} << bond.first;
    const std::size_t bit_j = std::size_t{1} << bond.second;
    std::size_t flip = 0;
    if (a == 1 || a == 2) {
        flip |= bit_i;
    }
    if (b == 1 || b == 2) {
        flip |= bit_j;
    }
    // Phase picked up by P|sigma>: Y|0> = i|1>, Y|1> = -i|0>, Z|1> = -|1>.
    const auto phase = [](int p, bool set) -> Complex {
        switch (p) {
        case 2:
            return set ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        case 3:
            return set ? -1.0 : 1.0;
        default:
            return 1.0;
        }
    };
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < ket.dimension(); ++n) {
        const Complex ph = phase(a, (n & bit_i) != 0) *
                           phase(b, (n & bit_j) != 0);
        acc += std::conj(bra[n ^ flip]) * ph * ket[n];
    }
    return acc;
}

FidelityTensor fidelity_tensor_via_pauli(const StateVector &ket,
                                         const StateVector &bra,
                                         const Bond &bond) {
    require_same_size(ket, bra, "fidelity_tensor_via_pauli");
    require_pair_capacity(ket, "fidelity_tensor_via_pauli");
    validate_bond(bond, ket.num_qubits());
    Matrix4c f = Matrix4c::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const Complex coeff = 0.25 * pauli_overlap(bra, ket, bond, a, b);
            // Local index sigma_i + 2 sigma_j: qubit j is the high factor.
            const Matrix4c p =
                Eigen::kroneckerProduct(pauli(b), pauli(a)).eval();
            f += coeff * p;
        }
    }
    return {bond, f};
}

Matrix4c reduced_density_matrix(const StateVector &state, const Bond &bond) {
    return fidelity_tensor(state, state, bond).matrix;
}

double q_fidelity(const ComplexMatrix &rho_a, const ComplexMatrix &rho_b) {
    if (rho_a.rows() != rho_b.rows() || rho_a.cols() != rho_b.cols() ||
        rho_a.rows() != rho_a.cols()) {
        throw DimensionError("q_fidelity: need equal square matrices");
    }
    const double t = (rho_a * rho_b).trace().real();
    return std::sqrt(std::max(t, 0.0));
}

void LinearCombinationTarget::add_basis(Complex coefficient,
                                        std::size_t index) {
    if (index >= (std::size_t{1} << num_qubits_)) {
        throw DimensionError("LinearCombinationTarget: basis index out of "
                             "range");
    }
    terms_.push_back({coefficient, index});
}

void LinearCombinationTarget::add_state(Complex coefficient,
                                        StateVector state) {
    if (state.num_qubits() != num_qubits_) {
        throw DimensionError("LinearCombinationTarget: qubit count mismatch");
    }
    terms_.push_back({coefficient, std::move(state)});
}

StateVector LinearCombinationTarget::to_state() const {
    std::vector<Complex> amps(std::size_t{1} << num_qubits_,
                              Complex{0.0, 0.0});
    for (const auto &t : terms_) {
        if (const auto *idx = std::get_if<std::size_t>(&t.component)) {
            amps[*idx] += t.coefficient;
        } else {
            const auto &s = std::get<StateVector>(t.component);
            for (std::size_t n = 0; n < amps.size(); ++n) {
                amps[n] += t.coefficient * s[n];
            }
        }
    }
    StateVector out(num_qubits_, std::move(amps));
    if (std::abs(out.norm() - 1.0) > tol::kNorm) {
        throw NumericError("LinearCombinationTarget: combined state has norm " +
                           std::to_string(out.norm()));
    }
    return out;
}

FidelityTensor
LinearCombinationTarget::fidelity_tensor(const StateVector &bra,
                                         const Bond &bond) const {
    Matrix4c f = Matrix4c::Zero();
    for (const auto &t : terms_) {
        if (const auto *idx = std::get_if<std::size_t>(&t.component)) {
            f += t.coefficient *
                 aqce::fidelity_tensor(StateVector::basis(num_qubits_, *idx),
                                       bra, bond)
                     .matrix;
        } else {
            f += t.coefficient *
                 aqce::fidelity_tensor(std::get<StateVector>(t.component),
                                       bra, bond)
                     .matrix;
        }
    }
    return {bond, f};
}

void write_qsv(const std::filesystem::path &path, const StateVector &state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "QSV v1 L=" << state.num_qubits() << "\n";
    for (const Complex &a : state.amplitudes()) {
        for (const double part : {a.real(), a.imag()}) {
            const std::uint64_t bits =
                to_little_endian(std::bit_cast<std::uint64_t>(part));
            out.write(reinterpret_cast<const char *>(&bits), sizeof(bits));
        }
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

StateVector read_qsv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string header;
    std::getline(in, header);
    constexpr std::string_view prefix = "QSV v1 L=";
    if (header.rfind(prefix, 0) != 0) {
        throw IoError(path.string() + ": missing 'QSV v1 L=<n>' header");
    }
    std::size_t num_qubits = 0;
    try {
        num_qubits = std::stoul(header.substr(prefix.size()));
    } catch (const std::exception &) {
        throw IoError(path.string() + ": bad qubit count in header");
    }
    if (num_qubits > kMaxQubits) {
        throw IoError(path.string() + ": qubit count too large");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        double parts[2];
        for (double &p : parts) {
            std::uint64_t bits = 0;
            if (!in.read(reinterpret_cast<char *>(&bits), sizeof(bits))) {
                throw IoError(path.string() + ": truncated amplitude data");
            }
            p = std::bit_cast<double>(to_little_endian(bits));
        }
        a = Complex(parts[0], parts[1]);
    }
    return StateVector(num_qubits, std::move(amps));
}

void write_state_text(const std::filesystem::path &path,
                      const StateVector &state) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "# L=" << state.num_qubits() << "\n";
    out.precision(17);
    for (std::size_t n = 0; n < state.dimension(); ++n) {
        out << n << " " << state[n].real() << " " << state[n].imag() << "\n";
    }
}

StateVector read_state_text(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::pair<std::size_t, Complex>> entries;
    std::optional<std::size_t> declared;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto pos = line.find("L=");
            if (pos != std::string::npos) {
                declared = std::stoul(line.substr(pos + 2));
            }
            continue;
        }
        std::istringstream ls(line);
        std::size_t idx = 0;
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> idx >> re >> im)) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected 'index re im'");
        }
        entries.emplace_back(idx, Complex(re, im));
    }
    std::size_t num_qubits = 0;
    if (declared) {
        num_qubits = *declared;
    } else {
        if (entries.empty() || !std::has_single_bit(entries.size())) {
            throw IoError(path.string() +
                          ": without an '# L=<n>' line the entry count must "
                          "be a power of two");
        }
        num_qubits = static_cast<std::size_t>(std::countr_zero(entries.size()));
    }
    if (num_qubits > kMaxQubits) {
        throw IoError(path.string() + ": qubit count too large");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits,
                              Complex{0.0, 0.0});
    for (const auto &[idx, val] : entries) {
        if (idx >= amps.size()) {
            throw IoError(path.string() + ": index " + std::to_string(idx) +
                          " out of range");
        }
        amps[idx] = val;
    }
    return StateVector(num_qubits, std::move(amps));
}

StateVector read_state(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char head[4] = {};
    in.read(head, 4);
    if (in.gcount() == 4 && std::memcmp(head, "QSV ", 4) == 0) {
        return read_qsv(path);
    }
    return read_state_text(path);
}

} // namespace aqce
