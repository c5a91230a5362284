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

#include "aqce/encoder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include "aqce/numerics.hpp"
#include "aqce/parallel.hpp"

namespace aqce {

namespace {

// Below this dimension a bond scan is too cheap to be worth threading.
constexpr std::size_t kParallelMinDimension = std::size_t{1} << 12;

// Pass-boundary consistency check on the incrementally updated cursor.
constexpr double kCursorDriftLimit = 1e-10;
constexpr double kDegenerateGap = 1e-10;
// Singular values below this count as zero; the score changes by < 4e-13.
constexpr double kNullSingular = 1e-13;
constexpr double kTieGap = 1e-12;

double max_state_diff(const StateVector &a, const StateVector &b) {
    double d = 0.0;
    for (std::size_t n = 0; n < a.dimension(); ++n) {
        d = std::max(d, std::abs(a[n] - b[n]));
    }
    return d;
}

// U_{M-1}^dagger ... U_{m+1}^dagger |target>
StateVector pull_back(const Circuit &circuit, const StateVector &target,
                      std::size_t m) {
    StateVector ket = target;
    for (std::size_t k = circuit.size(); k-- > m + 1;) {
        const auto &b = circuit.block(k);
        apply_two_qubit_inplace(ket, b.matrix, b.bond, true);
    }
    return ket;
}

// U_{m-1} ... U_0 |0>
StateVector push_forward(const Circuit &circuit, std::size_t m) {
    StateVector bra(circuit.num_qubits());
    for (std::size_t k = 0; k < m; ++k) {
        const auto &b = circuit.block(k);
        apply_two_qubit_inplace(bra, b.matrix, b.bond);
    }
    return bra;
}

void check_target(const Circuit &circuit, const StateVector &target) {
    if (circuit.num_qubits() != target.num_qubits()) {
        throw DimensionError("encoder: circuit and target qubit counts differ");
    }
    if (std::abs(target.norm() - 1.0) > tol::kNorm) {
        throw NumericError("encoder: target state is not normalized");
    }
}

void note_drift(EncodeTrace *trace, double drift) {
    if (trace != nullptr) {
        trace->max_cursor_drift = std::max(trace->max_cursor_drift, drift);
    }
    if (!(drift <= kCursorDriftLimit)) {
        throw NumericError("encoder: cursor drifted from recomputed state by " +
                           std::to_string(drift));
    }
}

// Leading eigenvector basis of the bond's reduced density matrix, columns in
// descending eigenvalue order.
struct RdmRotation {
    Matrix4c basis;
    double leading = 0.0;
    double population00 = 0.0; ///< <00|rho|00> before rotating
    std::vector<double> values;
};

RdmRotation rdm_rotation(const StateVector &state, const Bond &bond) {
    const Matrix4c rho = reduced_density_matrix(state, bond);
    const EigResult eig = hermitian_eig(rho);
    RdmRotation r;
    r.population00 = rho(0, 0).real();
    r.basis = eig.vectors;
    r.leading = eig.values.front();
    r.values = eig.values;
    return r;
}

// Any orthonormal basis of a degenerate eigenspace is equally valid; a
// seeded Haar rotation picks one. The solver's axis-aligned choice keeps
// symmetric targets such as GHZ pinned to product-state plateaus.
void mix_degenerate(RdmRotation &rot, std::mt19937_64 &rng) {
    std::size_t start = 0;
    while (start < 4) {
        std::size_t end = start + 1;
        while (end < 4 && rot.values[start] - rot.values[end] <= kDegenerateGap) {
            ++end;
        }
        const std::size_t g = end - start;
        if (g > 1) {
            const ComplexMatrix mix = haar_unitary(g, rng);
            const auto cols = static_cast<Eigen::Index>(start);
            const auto n = static_cast<Eigen::Index>(g);
            const ComplexMatrix block = rot.basis.middleCols(cols, n) * mix;
            rot.basis.middleCols(cols, n) = block;
        }
        start = end;
    }
}

// Fixed generic k x k unitaries, k = 1..4.
const ComplexMatrix &null_pairing(std::size_t k) {
    static const std::array<ComplexMatrix, 4> table = [] {
        std::array<ComplexMatrix, 4> t;
        std::mt19937_64 rng(0x51ab1e);
        for (std::size_t n = 1; n <= 4; ++n) {
            t[n - 1] = haar_unitary(n, rng);
        }
        return t;
    }();
    return table[k - 1];
}

bool reached(const std::optional<double> &stop, double abs_fidelity) {
    return stop.has_value() && abs_fidelity >= *stop;
}

} // namespace

const char *phase_name(TracePhase phase) {
    switch (phase) {
    case TracePhase::kInit:
        return "init";
    case TracePhase::kSweep:
        return "sweep";
    case TracePhase::kEnlarge:
        return "enlarge";
    case TracePhase::kFinal:
        return "final";
    }
    return "unknown";
}

void EncodeTrace::record(TraceEvent event) {
    event.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - origin)
                           .count();
    // Initialization is not an ascent step, so it only sets the baseline.
    if (!events.empty() && event.phase != TracePhase::kInit) {
        const double drop = events.back().abs_fidelity - event.abs_fidelity;
        max_fidelity_drop = std::max(max_fidelity_drop, drop);
    }
    events.push_back(event);
}

void EncodeTrace::write_csv(std::ostream &out, bool include_timing) const {
    out << "phase,M,sweep,block,abs_fidelity,elapsed_ms\n";
    char buf[64];
    for (const auto &e : events) {
        std::snprintf(buf, sizeof buf, "%.17g", e.abs_fidelity);
        out << phase_name(e.phase) << ',' << e.num_blocks << ',' << e.sweep
            << ',' << e.block << ',' << buf << ',';
        if (include_timing) {
            std::snprintf(buf, sizeof buf, "%.3f", e.elapsed_ms);
            out << buf;
        } else {
            out << '0';
        }
        out << '\n';
    }
}

void EncodeTrace::write_csv(const std::filesystem::path &path,
                            bool include_timing) const {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_csv(out, include_timing);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

void EncodeConfig::validate() const {
    if (m0 == 0) {
        throw InputError("M0 must be at least 1");
    }
    if (m_max < m0) {
        throw InputError("Mmax must be at least M0");
    }
    if (delta_m == 0) {
        throw InputError("dM must be at least 1");
    }
    if (restarts == 0) {
        throw InputError("restarts must be at least 1");
    }
    if (bonds.empty()) {
        throw InputError("bond set must not be empty");
    }
    if (fidelity_stop && !(*fidelity_stop > 0.0 && *fidelity_stop <= 1.0)) {
        throw InputError("fidelity stop must lie in (0, 1]");
    }
}

EncodeConfig preset_config(const std::string &name, std::size_t num_qubits) {
    const std::size_t L = num_qubits;
    if (L < 2) {
        throw InputError("preset " + name + ": need L >= 2");
    }
    EncodeConfig c;
    c.bonds = all_pairs_bonds(L);
    if (name == "paper-heis") {
        c.m0 = L;
        c.sweeps = 20;
        c.delta_m = std::max<std::size_t>(1, L / 2);
        c.m_max = std::max(L * L / 2, c.m0);
    } else if (name == "paper-xy" || name == "paper-xy-strict") {
        c.m0 = L;
        c.sweeps = 20;
        c.delta_m = std::max<std::size_t>(1, L / 2);
        const std::size_t strict = L > 5 ? L * (L - 5) / 2 : 0;
        c.m_max = name == "paper-xy" ? std::max(strict, L * L / 4) : strict;
        c.m_max = std::max(c.m_max, c.m0);
    } else if (name == "paper-image") {
        c.m0 = 16;
        c.sweeps = 100;
        c.delta_m = 8;
        c.m_max = 16;
    } else if (name == "paper-image-seg") {
        c.m0 = 12;
        c.sweeps = 100;
        c.delta_m = 6;
        c.m_max = 12;
    } else {
        throw InputError("unknown preset: " + name);
    }
    return c;
}

OptimalUnitary optimal_unitary(const Matrix4c &fidelity) {
    if (!all_finite(fidelity)) {
        throw NumericError("optimal_unitary: non-finite fidelity tensor");
    }
    SVDResult s = svd(fidelity);
    // Singular vectors of vanishing singular values may be paired by any
    // unitary without changing the score. The solver's pairing tends to be
    // axis-aligned, which can keep the sweep on a symmetric plateau (GHZ on
    // a chain is the standard example), so a fixed generic pairing is used.
    std::size_t null_dim = 0;
    for (double d : s.singular) {
        null_dim += d < kNullSingular ? 1 : 0;
    }
    if (null_dim > 0) {
        const auto k = static_cast<Eigen::Index>(null_dim);
        const ComplexMatrix rotated = s.left.rightCols(k) * null_pairing(null_dim);
        s.left.rightCols(k) = rotated;
    }
    OptimalUnitary r;
    r.unitary = s.left * s.right;
    for (double d : s.singular) {
        r.score += d;
    }
    return r;
}

SweepCursor make_cursor(const Circuit &circuit, const StateVector &target,
                        std::size_t m) {
    check_target(circuit, target);
    if (m >= circuit.size()) {
        throw DimensionError("make_cursor: block index out of range");
    }
    return {m, push_forward(circuit, m), pull_back(circuit, target, m)};
}

BlockUpdate best_update(const SweepCursor &cursor, const Circuit &circuit,
                        const BondSet *bonds) {
    if (bonds == nullptr) {
        const Bond bond = circuit.block(cursor.position).bond;
        const auto opt = optimal_unitary(
            fidelity_tensor(cursor.ket, cursor.bra, bond).matrix);
        return {bond, opt.unitary, opt.score};
    }
    std::vector<OptimalUnitary> results(bonds->size());
    const auto evaluate_bond = [&](std::size_t k) {
        results[k] = optimal_unitary(
            fidelity_tensor(cursor.ket, cursor.bra, (*bonds)[k]).matrix);
    };
    if (cursor.ket.dimension() >= kParallelMinDimension && thread_count() > 1) {
        parallel_for(bonds->size(), evaluate_bond);
    } else {
        for (std::size_t k = 0; k < bonds->size(); ++k) {
            evaluate_bond(k);
        }
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k) {
        if (results[k].score > results[best].score) {
            best = k;
        }
    }
    return {(*bonds)[best], results[best].unitary, results[best].score};
}

BlockUpdate update_block(Circuit &circuit, std::size_t m,
                         const SweepCursor &cursor, const BondSet *bonds) {
    if (cursor.position != m) {
        throw InternalError("update_block: cursor is positioned elsewhere");
    }
    BlockUpdate u = best_update(cursor, circuit, bonds);
    auto &block = circuit.block(m);
    block.bond = u.bond;
    block.matrix = u.matrix;
    return u;
}

double sweep_pass(Circuit &circuit, const StateVector &target,
                  const BondSet *bonds, SweepDirection direction,
                  EncodeTrace *trace, TracePhase phase,
                  std::size_t sweep_index) {
    check_target(circuit, target);
    const std::size_t M = circuit.size();
    if (M == 0) {
        throw InputError("sweep: circuit has no blocks");
    }
    double score = 0.0;
    const auto log = [&](std::size_t m) {
        if (trace != nullptr) {
            trace->record({phase, M, sweep_index, m + 1, score, 0.0});
        }
    };

    if (direction == SweepDirection::kForward) {
        SweepCursor c = make_cursor(circuit, target, 0);
        for (std::size_t m = 0; m < M; ++m) {
            c.position = m;
            const auto u = update_block(circuit, m, c, bonds);
            score = u.score;
            log(m);
            apply_two_qubit_inplace(c.bra, u.matrix, u.bond);
            if (m + 1 < M) {
                const auto &next = circuit.block(m + 1);
                apply_two_qubit_inplace(c.ket, next.matrix, next.bond);
            }
        }
        note_drift(trace, max_state_diff(c.bra, evaluate(circuit)));
    } else {
        SweepCursor c = make_cursor(circuit, target, M - 1);
        for (std::size_t m = M; m-- > 0;) {
            c.position = m;
            const auto u = update_block(circuit, m, c, bonds);
            score = u.score;
            log(m);
            apply_two_qubit_inplace(c.ket, u.matrix, u.bond, true);
            if (m > 0) {
                const auto &prev = circuit.block(m - 1);
                apply_two_qubit_inplace(c.bra, prev.matrix, prev.bond, true);
            }
        }
        StateVector fresh = target;
        for (std::size_t k = M; k-- > 0;) {
            const auto &b = circuit.block(k);
            apply_two_qubit_inplace(fresh, b.matrix, b.bond, true);
        }
        note_drift(trace, max_state_diff(c.ket, fresh));
    }
    return score;
}

double sweep(Circuit &circuit, const StateVector &target, const BondSet *bonds,
             EncodeTrace *trace, TracePhase phase, std::size_t sweep_index) {
    sweep_pass(circuit, target, bonds, SweepDirection::kForward, trace, phase,
               sweep_index);
    return sweep_pass(circuit, target, bonds, SweepDirection::kBackward, trace,
                      phase, sweep_index);
}

Circuit initialize_circuit(const StateVector &target, const BondSet &bonds,
                           std::size_t m0, std::uint64_t seed,
                           InitSelection selection, EncodeTrace *trace) {
    if (m0 == 0) {
        throw InputError("initialize_circuit: M0 must be at least 1");
    }
    if (bonds.empty()) {
        throw InputError("initialize_circuit: empty bond set");
    }
    Circuit probe(target.num_qubits());
    check_target(probe, target);

    std::mt19937_64 rng(seed);
    StateVector residual = target;
    std::vector<UnitaryBlock> found;
    found.reserve(m0);
    for (std::size_t k = 0; k < m0; ++k) {
        // Scores equal to within the gap are ties; the lowest index wins.
        std::size_t best = 0;
        RdmRotation best_rot;
        double best_score = 0.0;
        for (std::size_t b = 0; b < bonds.size(); ++b) {
            RdmRotation rot = rdm_rotation(residual, bonds[b]);
            const double score = selection == InitSelection::kGain
                                     ? rot.leading - rot.population00
                                     : rot.leading;
            if (b == 0 || score > best_score + kTieGap) {
                best = b;
                best_rot = std::move(rot);
                best_score = score;
            }
        }
        mix_degenerate(best_rot, rng);
        apply_two_qubit_inplace(residual, best_rot.basis, bonds[best], true);
        found.push_back({bonds[best], best_rot.basis});
    }

    Circuit c(target.num_qubits());
    for (std::size_t k = found.size(); k-- > 0;) {
        c.append(found[k]);
    }
    if (trace != nullptr) {
        trace->record({TracePhase::kInit, c.size(), 0, c.size(),
                       std::abs(circuit_fidelity(c, target)), 0.0});
    }
    return c;
}

Circuit initialize_along(const Circuit &layout, const StateVector &target,
                         std::uint64_t seed) {
    check_target(layout, target);
    std::mt19937_64 rng(seed);
    Circuit c = layout;
    StateVector residual = target;
    for (std::size_t k = c.size(); k-- > 0;) {
        auto &block = c.block(k);
        RdmRotation rot = rdm_rotation(residual, block.bond);
        mix_degenerate(rot, rng);
        apply_two_qubit_inplace(residual, rot.basis, block.bond, true);
        block.matrix = rot.basis;
    }
    return c;
}

double enlarge(Circuit &circuit, const StateVector &target,
               std::size_t delta_m, const BondSet &bonds, EncodeTrace *trace) {
    if (bonds.empty()) {
        throw InputError("enlarge: empty bond set");
    }
    double score = std::abs(circuit_fidelity(circuit, target));
    for (std::size_t r = 0; r < delta_m; ++r) {
        circuit.insert(0, {bonds[0], Matrix4c::Identity()});
        score = sweep_pass(circuit, target, &bonds, SweepDirection::kBackward,
                           trace, TracePhase::kEnlarge, 0);
    }
    return score;
}

namespace {

// Runs `count` sweeps; returns false once the stop threshold is met.
bool run_sweeps(Circuit &circuit, const StateVector &target,
                const BondSet *bonds, std::size_t count, TracePhase phase,
                const std::optional<double> &stop, EncodeTrace &trace,
                double &abs_fidelity) {
    for (std::size_t s = 1; s <= count; ++s) {
        abs_fidelity = sweep(circuit, target, bonds, &trace, phase, s);
        if (reached(stop, abs_fidelity)) {
            return false;
        }
    }
    return true;
}

void finish(EncodeResult &r, const StateVector &target) {
    r.fidelity = circuit_fidelity(r.circuit, target);
    r.abs_fidelity = std::abs(r.fidelity);
}

EncodeResult encode_impl(const StateVector &target, const EncodeConfig &config,
                         std::size_t final_sweeps,
                         const PhaseCallback &on_phase) {
    config.validate();
    if (config.mode != EncodeMode::kAutoStructure) {
        throw InputError("encode: fixed-structure runs go through "
                         "encode_fixed()");
    }
    EncodeResult r;
    r.target_seed = config.seed;
    r.circuit = initialize_circuit(target, config.bonds, config.m0, config.seed,
                                   config.init_selection, &r.trace);
    double f = std::abs(circuit_fidelity(r.circuit, target));
    const auto notify = [&] {
        if (on_phase) {
            on_phase(r.circuit, f);
        }
    };

    bool going = !reached(config.fidelity_stop, f);
    if (going) {
        going = run_sweeps(r.circuit, target, &config.bonds, config.sweeps,
                           TracePhase::kSweep, config.fidelity_stop, r.trace,
                           f);
        notify();
    }
    while (going && r.circuit.size() < config.m_max) {
        const std::size_t add =
            std::min(config.delta_m, config.m_max - r.circuit.size());
        f = enlarge(r.circuit, target, add, config.bonds, &r.trace);
        going = !reached(config.fidelity_stop, f);
        if (going) {
            going = run_sweeps(r.circuit, target, &config.bonds, config.sweeps,
                               TracePhase::kSweep, config.fidelity_stop,
                               r.trace, f);
        }
        notify();
    }
    if (going && final_sweeps > 0) {
        run_sweeps(r.circuit, target, &config.bonds, final_sweeps,
                   TracePhase::kFinal, config.fidelity_stop, r.trace, f);
        notify();
    }
    finish(r, target);
    return r;
}

} // namespace

EncodeResult encode(const StateVector &target, const EncodeConfig &config,
                    const PhaseCallback &on_phase) {
    return encode_impl(target, config, config.final_sweeps, on_phase);
}

EncodeResult encode_fixed(const StateVector &target, const Circuit &layout,
                          std::size_t sweeps, FixedInit init,
                          std::optional<double> fidelity_stop,
                          std::uint64_t seed) {
    check_target(layout, target);
    if (layout.empty()) {
        throw InputError("encode_fixed: layout has no blocks");
    }
    layout.validate();
    EncodeResult r;
    r.circuit = init == FixedInit::kReducedDensity
                    ? initialize_along(layout, target, seed)
                    : layout;
    double f = std::abs(circuit_fidelity(r.circuit, target));
    r.trace.record(
        {TracePhase::kInit, r.circuit.size(), 0, r.circuit.size(), f, 0.0});
    if (!reached(fidelity_stop, f)) {
        run_sweeps(r.circuit, target, nullptr, sweeps, TracePhase::kSweep,
                   fidelity_stop, r.trace, f);
    }
    finish(r, target);
    return r;
}

EncodeResult encode_with_restarts(const TargetFactory &factory,
                                  const EncodeConfig &config,
                                  const PhaseCallback &on_phase) {
    config.validate();
    if (!factory) {
        throw InputError("encode_with_restarts: no target factory");
    }
    EncodeResult best;
    StateVector best_target;
    bool have = false;
    for (std::size_t k = 0; k < config.restarts; ++k) {
        EncodeConfig run = config;
        run.seed = config.seed + k;
        StateVector target = factory(run.seed);
        EncodeResult r = encode_impl(target, run, 0, on_phase);
        r.restart = k;
        if (!have || r.abs_fidelity > best.abs_fidelity) {
            best = std::move(r);
            best_target = std::move(target);
            have = true;
        }
        if (reached(config.fidelity_stop, best.abs_fidelity)) {
            break;
        }
    }
    if (config.final_sweeps > 0 &&
        !reached(config.fidelity_stop, best.abs_fidelity)) {
        double f = best.abs_fidelity;
        run_sweeps(best.circuit, best_target, &config.bonds,
                   config.final_sweeps, TracePhase::kFinal,
                   config.fidelity_stop, best.trace, f);
        if (on_phase) {
            on_phase(best.circuit, f);
        }
        finish(best, best_target);
    }
    return best;
}

double fidelity_per_site(double abs_fidelity, std::size_t num_qubits) {
    if (num_qubits == 0) {
        throw InputError("fidelity_per_site: L must be positive");
    }
    return std::pow(abs_fidelity, 1.0 / static_cast<double>(num_qubits));
}

} // namespace aqce
