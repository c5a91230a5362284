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

#include "aqce/golden.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "aqce/numerics.hpp"

namespace aqce::golden {

namespace {

// Published angles carry 8 significant digits.
constexpr double kTableOverlap = 1.0 - 1e-6;
constexpr double kBuilderOverlap = 1.0 - 1e-12;
constexpr double kTomography = 1e-12;

StateVector from_amplitudes(std::size_t num_qubits,
                            std::vector<Complex> amps) {
    StateVector s(num_qubits, std::move(amps));
    s.normalize();
    return s;
}

Angles shifted(const Angles &a, double offset) {
    Angles out = a;
    for (double &x : out) {
        x += offset;
    }
    return out;
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

CheckResult overlap_check(const std::string &name, const std::string &group,
                          const Circuit &circuit, const StateVector &target,
                          double threshold) {
    const double f = std::abs(circuit_fidelity(circuit, target));
    CheckResult r{name, group, f > threshold, f, threshold, ""};
    r.detail = "|<target|C|0>| = " + fmt("%.12f", f) + " (need > " +
               fmt("%.12f", threshold) + ")";
    return r;
}

bool selected(const VerifyOptions &o, const std::string &name,
              const std::string &group) {
    if (o.only.empty()) {
        return true;
    }
    return std::any_of(o.only.begin(), o.only.end(), [&](const auto &s) {
        return s == name || s == group;
    });
}

} // namespace

StateVector singlet_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return from_amplitudes(2, {0.0, -h, h, 0.0});
}

StateVector random2_state() {
    return from_amplitudes(2, {{0.36179353, 0.42519915},
                               {0.14876111, 0.33156910},
                               {-0.02356009, 0.68066637},
                               {0.23101109, -0.19752287}});
}

StateVector ghz_state() {
    std::vector<Complex> a(8, 0.0);
    a[0] = a[7] = 1.0 / std::sqrt(2.0);
    return from_amplitudes(3, std::move(a));
}

StateVector random3_state() {
    return from_amplitudes(3, {{-0.41507377, 0.14526187},
                               {0.03169105, 0.35848024},
                               {-0.23166622, 0.21332733},
                               {-0.32248929, -0.06104028},
                               {-0.11551530, 0.13972069},
                               {0.26960898, -0.03973709},
                               {0.00215509, 0.44364270},
                               {0.01417350, 0.40747913}});
}

const Angles &singlet_angles() {
    static const Angles a{1.6823068,  3.1415927,  0.0,        -0.9758576,
                          0.0,        -1.6678105, 0.3926991,  3.5342917,
                          3.1355175,  -2.6094912, -3.1415927, 3.1204519,
                          -1.6869951, -3.1415926, 2.4721516};
    return a;
}

const Angles &random2_angles() {
    static const Angles a{2.0216448,  1.3683389,  -2.2863607, -2.8429004,
                          1.9027058,  -1.8420845, 0.7086172,  1.1534484,
                          1.6383263,  -2.6132016, -2.0676228, 2.1424122,
                          -1.2293439, -1.8418481, -2.6729236};
    return a;
}

const std::array<Angles, 2> &ghz_angles() {
    static const std::array<Angles, 2> a{
        Angles{0.70081942, 1.59343588, -2.99819974, 3.01209222, 1.45398911,
               -2.86368415, 0.25868788, 0.14505637, -0.63764672, -1.71718177,
               -2.80049545, -2.60125707, -2.13304918, 1.68590984, -2.04727870},
        Angles{0.0, 0.0, 0.0, 0.03670498, 1.57079633, 0.0, 0.25573854, 0.0,
               -2.35619449, 0.0, -3.14159265, 0.04066063, -1.57079633,
               -1.57079633, -1.11421776}};
    return a;
}

const std::array<Angles, 2> &random3_angles() {
    static const std::array<Angles, 2> a{
        Angles{1.39099869, 1.22253363, -1.22510250, -1.04474694, 1.85347535,
               -2.24417198, -1.06037512, -0.87968547, -0.05457889, 0.03359139,
               2.27862931, 0.49867804, 2.89140237, -0.80188802, 1.52534544},
        Angles{0.12699636, 1.49657252, -0.96112628, 0.0, 0.0, 0.0,
               -0.39222573, 0.60984155, -0.07696758, 0.48406694, -0.36703453,
               0.19553219, -1.17312888, -2.29176295, -3.06220240}};
    return a;
}

Circuit circuit_from_angles(std::size_t num_qubits,
                            const std::vector<Angles> &angles,
                            const std::vector<Bond> &bonds) {
    if (angles.size() != bonds.size()) {
        throw InputError("circuit_from_angles: one bond per angle set");
    }
    Circuit c(num_qubits);
    for (std::size_t k = 0; k < angles.size(); ++k) {
        GateParams p;
        p.theta = angles[k];
        c.append({bonds[k], reconstruct_gate(p)});
    }
    return c;
}

Circuit ghz_builder() {
    Circuit c(3);
    c.append({{0, 1}, on_first(hadamard())});
    c.append({{0, 1}, cnot()});
    c.append({{1, 2}, cnot()});
    return c;
}

Circuit singlet_builder() {
    Matrix2c x;
    x << 0.0, 1.0, 1.0, 0.0;
    Circuit c(2);
    c.append({{0, 1}, local_product(x, x)});
    c.append({{0, 1}, on_first(hadamard())});
    c.append({{0, 1}, cnot()});
    return c;
}

std::vector<CheckResult> run_checks(const VerifyOptions &o) {
    std::vector<CheckResult> out;
    const auto offset = [&](const char *table) {
        return o.mutate_table == table ? o.mutate_offset : 0.0;
    };

    if (selected(o, "table1-singlet", "tables")) {
        const Circuit c = circuit_from_angles(
            2, {shifted(singlet_angles(), offset("table1"))}, {{0, 1}});
        out.push_back(overlap_check("table1-singlet", "tables", c,
                                    singlet_state(), kTableOverlap));
    }
    if (selected(o, "table1-random", "tables")) {
        const Circuit c = circuit_from_angles(
            2, {shifted(random2_angles(), offset("table1"))}, {{0, 1}});
        out.push_back(overlap_check("table1-random", "tables", c,
                                    random2_state(), kTableOverlap));
    }
    if (selected(o, "table2-ghz", "tables")) {
        const auto &a = ghz_angles();
        const Circuit c = circuit_from_angles(
            3, {shifted(a[0], offset("table2")), shifted(a[1], offset("table2"))},
            {{0, 1}, {1, 2}});
        out.push_back(overlap_check("table2-ghz", "tables", c, ghz_state(),
                                    kTableOverlap));
    }
    if (selected(o, "table3-random", "tables")) {
        const auto &a = random3_angles();
        const Circuit c = circuit_from_angles(
            3, {shifted(a[0], offset("table3")), shifted(a[1], offset("table3"))},
            {{1, 2}, {0, 1}});
        out.push_back(overlap_check("table3-random", "tables", c,
                                    random3_state(), kTableOverlap));
    }
    if (selected(o, "builder-ghz", "builders")) {
        out.push_back(overlap_check("builder-ghz", "builders", ghz_builder(),
                                    ghz_state(), kBuilderOverlap));
    }
    if (selected(o, "builder-singlet", "builders")) {
        out.push_back(overlap_check("builder-singlet", "builders",
                                    singlet_builder(), singlet_state(),
                                    kBuilderOverlap));
    }
    if (selected(o, "tomography", "tomography")) {
        std::mt19937_64 rng(o.seed);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t L = 2 + static_cast<std::size_t>(rng() % 7);
            const StateVector ket = StateVector::random(L, rng);
            const StateVector bra = StateVector::random(L, rng);
            Bond b{static_cast<std::size_t>(rng() % L), 0};
            do {
                b.second = static_cast<std::size_t>(rng() % L);
            } while (b.second == b.first);
            const auto direct = fidelity_tensor(ket, bra, b).matrix;
            const auto pauli = fidelity_tensor_via_pauli(ket, bra, b).matrix;
            worst = std::max(worst, max_abs_diff(direct, pauli));
        }
        CheckResult r{"tomography", "tomography", worst < kTomography, worst,
                      kTomography, ""};
        r.detail = "max |F_pauli - F_direct| over 100 pairs = " +
                   fmt("%.3e", worst);
        out.push_back(r);
    }
    return out;
}

std::string format_check(const CheckResult &r) {
    return std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail;
}

} // namespace aqce::golden
