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
 * Circuits of two-qubit unitary blocks, bond sets, fixed layouts, and
 * serialization.
 *
 * Blocks are stored in application order: blocks[0] acts first on |0...0>.
 * Serialized formats number blocks m = 1..M in the same order.
 */

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "aqce/state.hpp"

namespace aqce {

struct UnitaryBlock {
    Bond bond;
    Matrix4c matrix = Matrix4c::Identity();
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t size() const { return blocks_.size(); }
    [[nodiscard]] bool empty() const { return blocks_.empty(); }

    [[nodiscard]] const std::vector<UnitaryBlock> &blocks() const {
        return blocks_;
    }
    [[nodiscard]] const UnitaryBlock &block(std::size_t m) const {
        return blocks_.at(m);
    }
    UnitaryBlock &block(std::size_t m) { return blocks_.at(m); }

    /// Appends a block (it acts after all existing blocks).
    void append(const UnitaryBlock &block);

    /// Inserts a block so that it becomes blocks[position].
    void insert(std::size_t position, const UnitaryBlock &block);

    /// Throws on bad bonds or non-unitary matrices (tolerance 1e-10).
    void validate() const;

  private:
    std::size_t num_qubits_ = 0;
    std::vector<UnitaryBlock> blocks_;
};

/// Unordered qubit pairs, stored as (i, j) with i < j, no duplicates.
class BondSet {
  public:
    BondSet() = default;

    /// Validates against num_qubits; duplicates and i == j are rejected.
    BondSet(std::vector<Bond> bonds, std::size_t num_qubits);

    [[nodiscard]] const std::vector<Bond> &bonds() const { return bonds_; }
    [[nodiscard]] std::size_t size() const { return bonds_.size(); }
    [[nodiscard]] bool empty() const { return bonds_.empty(); }
    [[nodiscard]] const Bond &operator[](std::size_t k) const {
        return bonds_[k];
    }

  private:
    std::vector<Bond> bonds_;
};

/// All L(L-1)/2 pairs in lexicographic order.
[[nodiscard]] BondSet all_pairs_bonds(std::size_t num_qubits);

/**
 * Nearest neighbours (0,1), (1,2), ..., plus (0, L-1) when periodic.
 * For L = 2 the periodic wrap coincides with (0, 1) and is not repeated.
 */
[[nodiscard]] BondSet chain_bonds(std::size_t num_qubits, bool periodic);

[[nodiscard]] BondSet explicit_bonds(const std::vector<Bond> &bonds,
                                     std::size_t num_qubits);

/// Reads "i j" pairs, one per line; '#' starts a comment.
[[nodiscard]] BondSet read_bonds_file(const std::filesystem::path &path,
                                      std::size_t num_qubits);

/// C|0...0>
[[nodiscard]] StateVector evaluate(const Circuit &circuit);

/// <0| C^dagger |target>
[[nodiscard]] Complex circuit_fidelity(const Circuit &circuit,
                                       const StateVector &target);

/**
 * D brick-wall layers of identity blocks. Each layer holds the even bonds
 * (0,1), (2,3), ... followed by the odd bonds (1,2), ..., (L-1, 0).
 * Requires even L.
 */
[[nodiscard]] Circuit trotter_structure(std::size_t num_qubits,
                                        std::size_t depth);

/**
 * MERA-like layout of 2 D (L - 2) + 1 identity blocks for L = 2^k >= 4.
 *
 * The circuit starts with one block on (0, L/2). Then for each scale
 * s = log2(L) - 2 down to 0 the active qubits q_k = k 2^s (k = 0..n-1,
 * n = L / 2^s) receive D brick-wall layers on the ring q_0, ..., q_{n-1}:
 * (q_0,q_1), (q_2,q_3), ... then (q_1,q_2), ..., (q_{n-1}, q_0).
 */
[[nodiscard]] Circuit mera_structure(std::size_t num_qubits,
                                     std::size_t depth);

/// Independent real parameters after merging adjacent rotations: 9 M + 3 L.
[[nodiscard]] std::size_t count_parameters(const Circuit &circuit);

[[nodiscard]] nlohmann::json circuit_to_json(const Circuit &circuit);
[[nodiscard]] Circuit circuit_from_json(const nlohmann::json &j);

void export_json(const Circuit &circuit, const std::filesystem::path &path);
[[nodiscard]] Circuit import_json(const std::filesystem::path &path);

/**
 * OpenQASM 2.0 text. Each block becomes 8 u3 gates and 3 cx gates; global
 * phases are dropped since the language cannot express them.
 */
[[nodiscard]] std::string to_qasm(const Circuit &circuit);
void export_qasm(const Circuit &circuit, const std::filesystem::path &path);

} // namespace aqce
