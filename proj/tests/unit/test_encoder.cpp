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

#include <random>
#include <sstream>

#include "aqce/encoder.hpp"
#include "aqce/golden.hpp"
#include "aqce/hamiltonian.hpp"
#include "aqce/numerics.hpp"
#include "aqce/parallel.hpp"
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

double nuclear_norm(const Matrix4c &f) {
    double s = 0.0;
    for (double d : oracle::jacobi_singular_values(f)) {
        s += d;
    }
    return s;
}

} // namespace

TEST_CASE("optimal unitary attains the nuclear norm", "[encoder]") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix4c f = random_complex_matrix(4, 4, rng);
        const OptimalUnitary opt = optimal_unitary(f);
        CHECK(unitarity_deviation(opt.unitary) < 1e-12);
        const double achieved = std::abs((f * opt.unitary.adjoint()).trace());
        CHECK_THAT(achieved, WithinAbs(opt.score, 1e-12));
        CHECK_THAT(opt.score, WithinAbs(nuclear_norm(f), 1e-12));
        for (int k = 0; k < 50; ++k) {
            const Matrix4c v = haar_unitary(4, rng);
            CHECK(std::abs((f * v.adjoint()).trace()) <= opt.score + 1e-12);
        }
    }
}

TEST_CASE("cursor states reproduce the circuit fidelity", "[encoder]") {
    std::mt19937_64 rng(72);
    const Circuit c = random_circuit(5, 7, rng);
    const StateVector target = StateVector::random(5, rng);
    const Complex f = circuit_fidelity(c, target);
    for (std::size_t m = 0; m < c.size(); ++m) {
        const SweepCursor cur = make_cursor(c, target, m);
        const auto &b = c.block(m);
        const Matrix4c fm = fidelity_tensor(cur.ket, cur.bra, b.bond).matrix;
        CHECK(std::abs((fm * b.matrix.adjoint()).trace() - f) < 1e-12);
    }
}

TEST_CASE("block updates never lower the fidelity", "[encoder]") {
    std::mt19937_64 rng(73);
    const BondSet bonds = all_pairs_bonds(5);
    Circuit c = random_circuit(5, 6, rng);
    const StateVector target = StateVector::random(5, rng);
    double prev = std::abs(circuit_fidelity(c, target));
    for (std::size_t m = 0; m < c.size(); ++m) {
        const SweepCursor cur = make_cursor(c, target, m);
        const BlockUpdate u = update_block(c, m, cur, &bonds);
        const double now = std::abs(circuit_fidelity(c, target));
        CHECK_THAT(now, WithinAbs(u.score, 1e-12));
        CHECK(now >= prev - 1e-12);
        prev = now;
    }
}

TEST_CASE("auto mode picks the best bond, earliest on ties", "[encoder]") {
    // Target |00> on qubits (1, 2) entangled with nothing: every bond gives
    // score 1 for |0...0>, so the first bond must win.
    const StateVector target(4);
    Circuit c(4);
    c.append({{2, 3}, Matrix4c::Identity()});
    const BondSet bonds = all_pairs_bonds(4);
    const BlockUpdate u = best_update(make_cursor(c, target, 0), c, &bonds);
    CHECK(u.bond == Bond{0, 1});
    CHECK_THAT(u.score, WithinAbs(1.0, 1e-14));
    // Fixed mode keeps the block's bond.
    const BlockUpdate f = best_update(make_cursor(c, target, 0), c, nullptr);
    CHECK(f.bond == Bond{2, 3});
}

TEST_CASE("sweeps are monotone and the trace records them", "[encoder]") {
    std::mt19937_64 rng(74);
    const BondSet bonds = all_pairs_bonds(6);
    const StateVector target = StateVector::random(6, rng);
    Circuit c = initialize_circuit(target, bonds, 6);
    EncodeTrace trace;
    double prev = std::abs(circuit_fidelity(c, target));
    for (std::size_t s = 1; s <= 5; ++s) {
        const double f = sweep(c, target, &bonds, &trace, TracePhase::kSweep, s);
        CHECK(f >= prev - 1e-12);
        CHECK_THAT(f, WithinAbs(std::abs(circuit_fidelity(c, target)), 1e-12));
        prev = f;
    }
    CHECK(trace.events.size() == 5 * 2 * c.size());
    CHECK(trace.max_fidelity_drop <= 1e-12);
    CHECK(trace.max_cursor_drift <= 1e-10);
}

TEST_CASE("initialization follows the reduced density matrices", "[encoder]") {
    // Bell pairs on (0, 2) and (1, 3): both marginals are pure, so the
    // lowest-index bond wins and one block recovers one pair.
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(16, 0.0);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const std::size_t n = static_cast<std::size_t>(a * 0b0101 + b * 0b1010);
            amps[n] = h * h;
        }
    }
    const StateVector target(4, amps);
    const Circuit one = initialize_circuit(target, all_pairs_bonds(4), 1);
    REQUIRE(one.size() == 1);
    CHECK(one.block(0).bond == Bond{0, 2});
    CHECK_THAT(std::abs(circuit_fidelity(one, target)), WithinAbs(h, 1e-12));

    // The rotated pair has nothing left to gain, so the second block goes
    // to the other pair.
    const Circuit two = initialize_circuit(target, all_pairs_bonds(4), 2);
    CHECK(two.block(0).bond == Bond{1, 3});
    CHECK(two.block(1).bond == Bond{0, 2});
    CHECK_THAT(std::abs(circuit_fidelity(two, target)), WithinAbs(1.0, 1e-12));

    // Ranking by the leading eigenvalue alone re-selects the rotated pair.
    const Circuit literal = initialize_circuit(
        target, all_pairs_bonds(4), 2, 1, InitSelection::kLeadingEigenvalue);
    CHECK(literal.block(0).bond == Bond{0, 2});
    CHECK(literal.block(1).bond == Bond{0, 2});
    CHECK_THAT(std::abs(circuit_fidelity(literal, target)), WithinAbs(h, 1e-12));
    CHECK_THROWS_AS(initialize_circuit(target, all_pairs_bonds(4), 0), InputError);
}

TEST_CASE("degenerate marginals are resolved by the seed", "[encoder]") {
    const StateVector ghz = golden::ghz_state();
    const BondSet chain = explicit_bonds({{0, 1}, {1, 2}}, 3);
    const Circuit a = initialize_circuit(ghz, chain, 2, 11);
    const Circuit b = initialize_circuit(ghz, chain, 2, 11);
    const Circuit c = initialize_circuit(ghz, chain, 2, 12);
    CHECK((a.block(0).matrix - b.block(0).matrix).norm() == 0.0);
    CHECK((a.block(0).matrix - c.block(0).matrix).norm() > 1e-3);
    for (const auto &blk : a.blocks()) {
        CHECK(unitarity_deviation(blk.matrix) < 1e-12);
    }
    // The first block found still carries the leading eigenvalue 1/2.
    const Matrix4c v = a.block(1).matrix;
    const Matrix4c rho = reduced_density_matrix(ghz, {0, 1});
    CHECK_THAT((v.adjoint() * rho * v)(0, 0).real(), WithinAbs(0.5, 1e-12));
}

TEST_CASE("initialization gives overlap to singlet-sector ground states",
          "[encoder]") {
    for (std::size_t L : {4, 6}) {
        const auto gs = lanczos_ground_state(XXZModel::heisenberg(L));
        REQUIRE(std::abs(gs.state[0]) < 1e-12);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Circuit c =
                initialize_circuit(gs.state, all_pairs_bonds(L), L, seed);
            CHECK(std::abs(circuit_fidelity(c, gs.state)) > 0.1);
        }
    }
}

TEST_CASE("enlargement preserves fidelity before optimizing", "[encoder]") {
    std::mt19937_64 rng(75);
    const BondSet bonds = all_pairs_bonds(5);
    const StateVector target = StateVector::random(5, rng);
    Circuit c = initialize_circuit(target, bonds, 3);
    sweep(c, target, &bonds);
    const double before = std::abs(circuit_fidelity(c, target));
    EncodeTrace trace;
    const double after = enlarge(c, target, 2, bonds, &trace);
    CHECK(c.size() == 5);
    CHECK(after >= before - 1e-12);
    CHECK(trace.max_fidelity_drop <= 1e-12);
}

TEST_CASE("GHZ needs exactly two blocks on a chain", "[encoder]") {
    EncodeConfig cfg;
    cfg.m0 = 1;
    cfg.m_max = 2;
    cfg.sweeps = 20;
    cfg.bonds = explicit_bonds({{0, 1}, {1, 2}}, 3);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        cfg.seed = seed;
        const EncodeResult one = encode(golden::ghz_state(), [&] {
            EncodeConfig c = cfg;
            c.m_max = 1;
            return c;
        }());
        CHECK_THAT(one.abs_fidelity, WithinAbs(1.0 / std::sqrt(2.0), 1e-12));
        const EncodeResult r = encode(golden::ghz_state(), cfg);
        CHECK(r.circuit.size() == 2);
        CHECK(r.abs_fidelity > 1.0 - 1e-10);
    }
}

TEST_CASE("three-qubit random state needs two blocks", "[encoder]") {
    EncodeConfig cfg;
    cfg.m0 = 1;
    cfg.m_max = 2;
    cfg.sweeps = 20;
    cfg.bonds = explicit_bonds({{0, 1}, {1, 2}}, 3);
    const EncodeResult r = encode(golden::random3_state(), cfg);
    CHECK(r.circuit.size() == 2);
    CHECK(r.abs_fidelity > 1.0 - 1e-10);
}

TEST_CASE("rank-deficient updates keep the optimal score", "[encoder]") {
    std::mt19937_64 rng(76);
    for (int trial = 0; trial < 50; ++trial) {
        // Rank r outer-product sums.
        const int rank = 1 + trial % 3;
        Matrix4c f = Matrix4c::Zero();
        for (int k = 0; k < rank; ++k) {
            const ComplexMatrix a = haar_unitary(4, rng);
            f += a.col(0) * a.col(1).adjoint() * (0.1 + 0.2 * k);
        }
        const OptimalUnitary u = optimal_unitary(f);
        CHECK(unitarity_deviation(u.unitary) < 1e-12);
        const double achieved = std::abs((f * u.unitary.adjoint()).trace());
        CHECK_THAT(achieved, WithinAbs(u.score, 1e-12));
    }
}

TEST_CASE("two-qubit targets are encoded exactly by one block", "[encoder]") {
    std::mt19937_64 rng(76);
    EncodeConfig cfg;
    cfg.m0 = 1;
    cfg.m_max = 1;
    cfg.sweeps = 1;
    cfg.bonds = all_pairs_bonds(2);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector t = StateVector::random(2, rng);
        CHECK(encode(t, cfg).abs_fidelity > 1.0 - 1e-12);
    }
}

TEST_CASE("encode respects the schedule and the stop threshold", "[encoder]") {
    std::mt19937_64 rng(77);
    const StateVector target = StateVector::random(5, rng);
    EncodeConfig cfg;
    cfg.m0 = 2;
    cfg.m_max = 7;
    cfg.delta_m = 2;
    cfg.sweeps = 3;
    cfg.final_sweeps = 2;
    cfg.bonds = all_pairs_bonds(5);
    std::vector<std::size_t> sizes;
    const EncodeResult r = encode(target, cfg, [&](const Circuit &c, double) {
        sizes.push_back(c.size());
    });
    CHECK(r.circuit.size() == 7);
    CHECK(sizes == std::vector<std::size_t>{2, 4, 6, 7, 7});
    CHECK(r.trace.max_fidelity_drop <= 1e-12);
    CHECK_THAT(r.abs_fidelity, WithinAbs(std::abs(circuit_fidelity(r.circuit, target)), 1e-14));

    // Product states are reached immediately and stop early.
    cfg.fidelity_stop = 1.0 - 1e-12;
    const EncodeResult p = encode(StateVector::basis(5, 19), cfg);
    CHECK(p.circuit.size() == 2);
    CHECK(p.abs_fidelity > 1.0 - 1e-12);
}

TEST_CASE("encode validates its configuration", "[encoder]") {
    const StateVector t(3);
    EncodeConfig cfg;
    cfg.bonds = all_pairs_bonds(3);
    cfg.m0 = 3;
    cfg.m_max = 2;
    CHECK_THROWS_AS(encode(t, cfg), InputError);
    cfg.m_max = 3;
    cfg.delta_m = 0;
    CHECK_THROWS_AS(encode(t, cfg), InputError);
    cfg.delta_m = 1;
    cfg.bonds = BondSet();
    CHECK_THROWS_AS(encode(t, cfg), InputError);
    cfg.bonds = all_pairs_bonds(4);
    CHECK_THROWS_AS(encode(t, cfg), DimensionError);
    cfg.bonds = all_pairs_bonds(3);
    StateVector bad(3);
    bad[0] = 2.0;
    CHECK_THROWS_AS(encode(bad, cfg), NumericError);
}

TEST_CASE("encoding is deterministic and thread-count independent",
          "[encoder]") {
    std::mt19937_64 rng(78);
    const StateVector target = StateVector::random(12, rng);
    EncodeConfig cfg;
    cfg.m0 = 4;
    cfg.m_max = 6;
    cfg.delta_m = 2;
    cfg.sweeps = 2;
    cfg.bonds = all_pairs_bonds(12);
    set_thread_count(1);
    const EncodeResult a = encode(target, cfg);
    set_thread_count(4);
    const EncodeResult b = encode(target, cfg);
    set_thread_count(0);
    std::ostringstream ca;
    std::ostringstream cb;
    a.trace.write_csv(ca);
    b.trace.write_csv(cb);
    CHECK(ca.str() == cb.str());
    CHECK(a.fidelity == b.fidelity);
}

TEST_CASE("restarts keep the best run", "[encoder]") {
    const XXZModel model = XXZModel::heisenberg(4);
    EncodeConfig cfg = preset_config("paper-heis", 4);
    cfg.restarts = 3;
    cfg.seed = 5;
    std::vector<std::uint64_t> seeds;
    const auto factory = [&](std::uint64_t s) {
        seeds.push_back(s);
        LanczosOptions o;
        o.seed = s;
        return lanczos_ground_state(model, o).state;
    };
    const EncodeResult r = encode_with_restarts(factory, cfg);
    CHECK(seeds == std::vector<std::uint64_t>{5, 6, 7});
    CHECK(r.target_seed == 5 + r.restart);
    CHECK(r.abs_fidelity > 1.0 - 1e-6);
}

TEST_CASE("fixed layouts keep their bonds", "[encoder]") {
    const auto gs = lanczos_ground_state(XXZModel::xy(4));
    const Circuit layout = trotter_structure(4, 4);
    const EncodeResult r = encode_fixed(gs.state, layout, 200);
    REQUIRE(r.circuit.size() == layout.size());
    for (std::size_t m = 0; m < layout.size(); ++m) {
        CHECK(r.circuit.block(m).bond == layout.block(m).bond);
    }
    CHECK(1.0 - r.abs_fidelity < 1e-6);
    CHECK(r.trace.max_fidelity_drop <= 1e-12);

    const Circuit along = initialize_along(layout, gs.state);
    CHECK(std::abs(circuit_fidelity(along, gs.state)) > 0.0);
}

TEST_CASE("presets", "[encoder]") {
    const EncodeConfig h = preset_config("paper-heis", 6);
    CHECK(h.m0 == 6);
    CHECK(h.sweeps == 20);
    CHECK(h.delta_m == 3);
    CHECK(h.m_max == 18);
    CHECK(h.bonds.size() == 15);
    CHECK(preset_config("paper-xy", 8).m_max == 16);
    CHECK(preset_config("paper-xy", 16).m_max == 88);
    CHECK(preset_config("paper-xy-strict", 16).m_max == 88);
    CHECK(preset_config("paper-xy-strict", 8).m_max == 12);
    const EncodeConfig img = preset_config("paper-image", 16);
    CHECK(img.m0 == 16);
    CHECK(img.sweeps == 100);
    CHECK(img.delta_m == 8);
    CHECK(preset_config("paper-image-seg", 12).delta_m == 6);
    CHECK_THROWS_AS(preset_config("nope", 4), InputError);
}

TEST_CASE("trace CSV format", "[encoder][io]") {
    EncodeTrace t;
    t.record({TracePhase::kInit, 2, 0, 2, 0.5, 0.0});
    t.record({TracePhase::kSweep, 2, 1, 1, 0.75, 0.0});
    t.record({TracePhase::kSweep, 2, 1, 2, 0.7, 0.0});
    CHECK_THAT(t.max_fidelity_drop, WithinAbs(0.05, 1e-15));
    std::ostringstream out;
    t.write_csv(out);
    CHECK(out.str() ==
          "phase,M,sweep,block,abs_fidelity,elapsed_ms\n"
          "init,2,0,2,0.5,0\n"
          "sweep,2,1,1,0.75,0\n"
          "sweep,2,1,2,0.69999999999999996,0\n");
    CHECK_THAT(fidelity_per_site(0.25, 2), WithinAbs(0.5, 1e-15));
}
