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

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "aqce/circuit.hpp"
#include "aqce/numerics.hpp"
#include "support/oracles.hpp"

using namespace aqce;
using Catch::Matchers::WithinAbs;

namespace {

Circuit random_circuit(std::size_t L, std::size_t M, std::mt19937_64 &rng) {
    Circuit c(L);
    for (std::size_t m = 0; m < M; ++m) {
        c.append({oracle::random_bond(L, rng), haar_unitary(4, rng)});
    }
    return c;
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "aqce_test_circuit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("bond sets", "[circuit]") {
    CHECK(all_pairs_bonds(4).size() == 6);
    CHECK(all_pairs_bonds(4)[0] == Bond{0, 1});
    CHECK(all_pairs_bonds(4)[5] == Bond{2, 3});
    CHECK(chain_bonds(6, true).size() == 6);
    CHECK(chain_bonds(6, false).size() == 5);
    CHECK(chain_bonds(2, true).size() == 1);
    const BondSet e = explicit_bonds({{2, 0}, {1, 2}}, 3);
    CHECK(e[0] == Bond{0, 2});
    CHECK_THROWS_AS(explicit_bonds({{0, 1}, {1, 0}}, 3), InputError);
    CHECK_THROWS_AS(explicit_bonds({{0, 3}}, 3), DimensionError);
    CHECK_THROWS_AS(explicit_bonds({}, 3), InputError);
    CHECK_THROWS_AS(all_pairs_bonds(1), InputError);

    const auto file = scratch("bonds.txt");
    {
        std::ofstream out(file);
        out << "# chain\n0 1\n\n1 2  # middle\n";
    }
    const BondSet fb = read_bonds_file(file, 3);
    CHECK(fb.size() == 2);
    CHECK(fb[1] == Bond{1, 2});
    {
        std::ofstream out(file);
        out << "0\n";
    }
    CHECK_THROWS_AS(read_bonds_file(file, 3), IoError);
}

TEST_CASE("evaluation agrees with the dense circuit matrix", "[circuit]") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t L = 2 + static_cast<std::size_t>(rng() % 5);
        const Circuit c = random_circuit(L, 1 + rng() % 8, rng);
        const Eigen::VectorXcd ref = oracle::circuit_matrix(c).col(0);
        const StateVector s = evaluate(c);
        for (std::size_t n = 0; n < s.dimension(); ++n) {
            CHECK(std::abs(s[n] - ref(static_cast<Eigen::Index>(n))) < 1e-12);
        }
        const StateVector t = StateVector::random(L, rng);
        const Complex f = circuit_fidelity(c, t);
        CHECK(std::abs(f - ref.dot(oracle::to_vector(t))) < 1e-12);
    }
}

TEST_CASE("insert and validate", "[circuit]") {
    Circuit c(3);
    Matrix4c x = Matrix4c::Zero();
    x(0, 1) = x(1, 0) = x(2, 3) = x(3, 2) = 1.0;
    c.append({{0, 1}, x});
    c.insert(0, {{1, 2}, Matrix4c::Identity()});
    CHECK(c.size() == 2);
    CHECK(c.block(0).bond == Bond{1, 2});
    CHECK_THROWS_AS(c.insert(5, {{0, 1}, Matrix4c::Identity()}), DimensionError);
    CHECK_THROWS_AS(c.append({{0, 3}, Matrix4c::Identity()}), DimensionError);
    c.block(1).matrix(0, 0) = 2.0;
    CHECK_THROWS_AS(c.validate(), NumericError);
}

TEST_CASE("fixed layouts", "[circuit]") {
    const Circuit t = trotter_structure(8, 2);
    CHECK(t.size() == 16);
    CHECK(t.block(0).bond == Bond{0, 1});
    CHECK(t.block(4).bond == Bond{1, 2});
    CHECK(t.block(7).bond == Bond{7, 0});
    CHECK(trotter_structure(4, 4).size() == 16);
    CHECK_THROWS_AS(trotter_structure(5, 1), InputError);

    for (std::size_t L : {4, 8, 16}) {
        for (std::size_t D : {1, 2}) {
            const Circuit m = mera_structure(L, D);
            CHECK(m.size() == 2 * D * (L - 2) + 1);
            CHECK(m.block(0).bond == Bond{0, L / 2});
            for (const auto &b : m.blocks()) {
                CHECK(b.matrix == Matrix4c::Identity());
            }
        }
    }
    // The coarsest ring of L=8 lives on qubits {0, 2, 4, 6}.
    const Circuit m8 = mera_structure(8, 1);
    CHECK(m8.block(1).bond == Bond{0, 2});
    CHECK(m8.block(2).bond == Bond{4, 6});
    CHECK(m8.block(3).bond == Bond{2, 4});
    CHECK(m8.block(4).bond == Bond{6, 0});
    CHECK_THROWS_AS(mera_structure(6, 1), InputError);
}

TEST_CASE("parameter counts", "[circuit]") {
    CHECK(count_parameters(Circuit(6)) == 18);
    CHECK(count_parameters(trotter_structure(6, 2)) == 126);
    CHECK(count_parameters(trotter_structure(8, 3)) == 240);
    Circuit big(12);
    for (int m = 0; m < 480; ++m) {
        big.append({{0, 1}, Matrix4c::Identity()});
    }
    CHECK(count_parameters(big) == 4356);
}

TEST_CASE("JSON round trip", "[circuit][io]") {
    std::mt19937_64 rng(62);
    const Circuit c = random_circuit(4, 6, rng);
    const auto path = scratch("c.json");
    export_json(c, path);
    const Circuit back = import_json(path);
    REQUIRE(back.size() == c.size());
    for (std::size_t m = 0; m < c.size(); ++m) {
        CHECK(back.block(m).bond == c.block(m).bond);
        CHECK(max_abs_diff(back.block(m).matrix, c.block(m).matrix) == 0.0);
    }
    const auto j = circuit_to_json(c);
    CHECK(j["blocks"][0]["m"] == 1);
    auto broken = j;
    broken["blocks"][1]["m"] = 7;
    CHECK_THROWS_AS(circuit_from_json(broken), IoError);
    broken = j;
    broken["version"] = 2;
    CHECK_THROWS_AS(circuit_from_json(broken), IoError);
}

TEST_CASE("QASM export reproduces the circuit", "[circuit][qasm]") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t L = 2 + static_cast<std::size_t>(rng() % 3);
        const Circuit c = random_circuit(L, 1 + rng() % 4, rng);
        const std::string text = to_qasm(c);
        CHECK(text.rfind("OPENQASM 2.0;", 0) == 0);
        const std::regex u3_re("u3\\(");
        const std::regex cx_re("\\bcx ");
        const auto n_u3 = std::distance(
            std::sregex_iterator(text.begin(), text.end(), u3_re),
            std::sregex_iterator());
        const auto n_cx = std::distance(
            std::sregex_iterator(text.begin(), text.end(), cx_re),
            std::sregex_iterator());
        CHECK(n_u3 == static_cast<long>(8 * c.size()));
        CHECK(n_cx == static_cast<long>(3 * c.size()));
        CHECK(max_abs_diff_up_to_phase(oracle::qasm_unitary(text),
                                       oracle::circuit_matrix(c)) < 1e-9);
    }
}
