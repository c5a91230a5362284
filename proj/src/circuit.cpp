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

#include "aqce/circuit.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numbers>
#include <sstream>

#include "aqce/gates.hpp"
#include "aqce/numerics.hpp"

namespace aqce {

namespace {

Bond canonical(const Bond &b) {
    return b.first < b.second ? b : Bond{b.second, b.first};
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace

void Circuit::append(const UnitaryBlock &block) {
    validate_bond(block.bond, num_qubits_);
    blocks_.push_back(block);
}

void Circuit::insert(std::size_t position, const UnitaryBlock &block) {
    validate_bond(block.bond, num_qubits_);
    if (position > blocks_.size()) {
        throw DimensionError("Circuit::insert: position out of range");
    }
    blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(position),
                   block);
}

void Circuit::validate() const {
    for (std::size_t m = 0; m < blocks_.size(); ++m) {
        validate_bond(blocks_[m].bond, num_qubits_);
        const double dev = unitarity_deviation(blocks_[m].matrix);
        if (!(dev <= tol::kUnitaryInput)) {
            throw NumericError("block " + std::to_string(m + 1) +
                               " is not unitary (deviation " +
                               std::to_string(dev) + ")");
        }
    }
}

BondSet::BondSet(std::vector<Bond> bonds, std::size_t num_qubits) {
    if (bonds.empty()) {
        throw InputError("bond set must not be empty");
    }
    for (const Bond &b : bonds) {
        validate_bond(b, num_qubits);
        const Bond c = canonical(b);
        if (std::find(bonds_.begin(), bonds_.end(), c) != bonds_.end()) {
            throw InputError("bond set: duplicate pair (" +
                             std::to_string(c.first) + ", " +
                             std::to_string(c.second) + ")");
        }
        bonds_.push_back(c);
    }
}

BondSet all_pairs_bonds(std::size_t num_qubits) {
    if (num_qubits < 2) {
        throw InputError("all_pairs_bonds: need L >= 2");
    }
    std::vector<Bond> bonds;
    for (std::size_t i = 0; i < num_qubits; ++i) {
        for (std::size_t j = i + 1; j < num_qubits; ++j) {
            bonds.push_back({i, j});
        }
    }
    return BondSet(std::move(bonds), num_qubits);
}

BondSet chain_bonds(std::size_t num_qubits, bool periodic) {
    if (num_qubits < 2) {
        throw InputError("chain_bonds: need L >= 2");
    }
    std::vector<Bond> bonds;
    for (std::size_t i = 0; i + 1 < num_qubits; ++i) {
        bonds.push_back({i, i + 1});
    }
    if (periodic && num_qubits > 2) {
        bonds.push_back({0, num_qubits - 1});
    }
    return BondSet(std::move(bonds), num_qubits);
}

BondSet explicit_bonds(const std::vector<Bond> &bonds,
                       std::size_t num_qubits) {
    return BondSet(bonds, num_qubits);
}

BondSet read_bonds_file(const std::filesystem::path &path,
                        std::size_t num_qubits) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open bond file " + path.string());
    }
    std::vector<Bond> bonds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        long long i = 0;
        long long j = 0;
        if (!(ls >> i)) {
            continue;
        }
        if (!(ls >> j) || i < 0 || j < 0) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected two non-negative qubit indices");
        }
        bonds.push_back(
            {static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    }
    return BondSet(std::move(bonds), num_qubits);
}

StateVector evaluate(const Circuit &circuit) {
    StateVector s(circuit.num_qubits());
    for (const auto &b : circuit.blocks()) {
        apply_two_qubit_inplace(s, b.matrix, b.bond);
    }
    return s;
}

Complex circuit_fidelity(const Circuit &circuit, const StateVector &target) {
    if (circuit.num_qubits() != target.num_qubits()) {
        throw DimensionError("circuit_fidelity: qubit counts differ");
    }
    return overlap(evaluate(circuit), target);
}

Circuit trotter_structure(std::size_t num_qubits, std::size_t depth) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw InputError("trotter_structure: L must be even and >= 2");
    }
    Circuit c(num_qubits);
    for (std::size_t d = 0; d < depth; ++d) {
        for (std::size_t i = 0; i < num_qubits; i += 2) {
            c.append({{i, i + 1}, Matrix4c::Identity()});
        }
        for (std::size_t i = 1; i < num_qubits; i += 2) {
            c.append({{i, (i + 1) % num_qubits}, Matrix4c::Identity()});
        }
    }
    return c;
}

Circuit mera_structure(std::size_t num_qubits, std::size_t depth) {
    if (num_qubits < 4 || !std::has_single_bit(num_qubits)) {
        throw InputError("mera_structure: L must be a power of two >= 4");
    }
    Circuit c(num_qubits);
    c.append({{0, num_qubits / 2}, Matrix4c::Identity()});
    const auto top_scale =
        static_cast<std::size_t>(std::countr_zero(num_qubits)) - 2;
    for (std::size_t s = top_scale + 1; s-- > 0;) {
        const std::size_t stride = std::size_t{1} << s;
        const std::size_t n = num_qubits / stride;
        for (std::size_t d = 0; d < depth; ++d) {
            for (std::size_t k = 0; k < n; k += 2) {
                c.append({{k * stride, (k + 1) * stride},
                          Matrix4c::Identity()});
            }
            for (std::size_t k = 1; k < n; k += 2) {
                c.append({{k * stride, ((k + 1) % n) * stride},
                          Matrix4c::Identity()});
            }
        }
    }
    return c;
}

std::size_t count_parameters(const Circuit &circuit) {
    return 9 * circuit.size() + 3 * circuit.num_qubits();
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    nlohmann::json blocks = nlohmann::json::array();
    for (std::size_t m = 0; m < circuit.size(); ++m) {
        const auto &b = circuit.block(m);
        blocks.push_back({{"m", m + 1},
                          {"bond", {b.bond.first, b.bond.second}},
                          {"matrix", matrix_to_json(b.matrix)}});
    }
    return {{"version", 1}, {"L", circuit.num_qubits()}, {"blocks", blocks}};
}

Circuit circuit_from_json(const nlohmann::json &j) {
    try {
        if (j.at("version").get<int>() != 1) {
            throw IoError("circuit JSON: unsupported version");
        }
        const auto num_qubits = j.at("L").get<std::size_t>();
        Circuit c(num_qubits);
        std::size_t expected = 1;
        for (const auto &jb : j.at("blocks")) {
            if (jb.at("m").get<std::size_t>() != expected) {
                throw IoError("circuit JSON: blocks must be numbered "
                              "1..M in order");
            }
            const auto &bond = jb.at("bond");
            if (!bond.is_array() || bond.size() != 2) {
                throw IoError("circuit JSON: bond must be [i, j]");
            }
            c.append({{bond[0].get<std::size_t>(), bond[1].get<std::size_t>()},
                      matrix_from_json(jb.at("matrix"))});
            ++expected;
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("circuit JSON: ") + e.what());
    }
}

void export_json(const Circuit &circuit, const std::filesystem::path &path) {
    write_text(path, circuit_to_json(circuit).dump(1) + "\n");
}

Circuit import_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return circuit_from_json(j);
}

std::string to_qasm(const Circuit &circuit) {
    constexpr double pi = std::numbers::pi;
    std::ostringstream out;
    out.precision(17);
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits() << "];\n";
    const auto u3 = [&out](const Matrix2c &v, std::size_t q) {
        // u3(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda) up to phase.
        const EulerAngles e = euler_decompose(v);
        out << "u3(" << e.theta2 << "," << e.theta3 << "," << e.theta1
            << ") q[" << q << "];\n";
    };
    for (std::size_t m = 0; m < circuit.size(); ++m) {
        const auto &b = circuit.block(m);
        GateParams p;
        try {
            p = decompose_gate(b.matrix);
        } catch (const Error &e) {
            throw NumericError("QASM export: block " + std::to_string(m + 1) +
                               ": " + e.what());
        }
        const auto &t = p.theta;
        const std::size_t qi = b.bond.first;
        const std::size_t qj = b.bond.second;
        out << "// block " << (m + 1) << " on (" << qi << "," << qj << ")\n";
        u3(rz(t[2]) * ry(t[1]) * rz(t[0]), qi);
        u3(rz(t[5]) * ry(t[4]) * rz(t[3]), qj);
        out << "cx q[" << qi << "],q[" << qj << "];\n";
        u3(hadamard() * rx(-2.0 * t[6]), qi);
        u3(rz(-2.0 * t[8]), qj);
        out << "cx q[" << qi << "],q[" << qj << "];\n";
        u3(hadamard() * phase_s(), qi);
        u3(rz(2.0 * t[7]), qj);
        out << "cx q[" << qi << "],q[" << qj << "];\n";
        u3(rz(t[11]) * ry(t[10]) * rz(t[9]) * rx(-pi / 2.0), qi);
        u3(rz(t[14]) * ry(t[13]) * rz(t[12]) * rx(pi / 2.0), qj);
    }
    return out.str();
}

void export_qasm(const Circuit &circuit, const std::filesystem::path &path) {
    write_text(path, to_qasm(circuit));
}

} // namespace aqce
