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
 * Automatic quantum circuit encoding.
 *
 * The encoder maximizes |F| with F = <0| C^dagger |target>, where
 * C = U_{M-1} ... U_1 U_0 and block 0 acts first. Holding every block but
 * U_m fixed, F = tr(F_m U_m^dagger) with F_m the fidelity tensor of
 *
 *     bra = U_{m-1} ... U_0 |0>,     ket = U_{m+1}^dagger ... U_{M-1}^dagger |target>.
 *
 * If F_m = X diag(d) Y (X, Y unitary), the update U_m = X Y attains
 * |F| = sum(d), the maximum over all unitaries. In auto-structure mode every
 * bond of the bond set is tried and the largest sum(d) wins, ties going to
 * the earlier bond.
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "aqce/circuit.hpp"

namespace aqce {

enum class EncodeMode { kAutoStructure, kFixedStructure };

enum class SweepDirection { kForward, kBackward };

enum class TracePhase { kInit, kSweep, kEnlarge, kFinal };

[[nodiscard]] const char *phase_name(TracePhase phase);

struct TraceEvent {
    TracePhase phase = TracePhase::kSweep;
    std::size_t num_blocks = 0; ///< M at the time of the event
    std::size_t sweep = 0;      ///< 1-based within the phase, 0 if n/a
    std::size_t block = 0;      ///< 1-based block index m
    double abs_fidelity = 0.0;
    double elapsed_ms = 0.0;
};

struct EncodeTrace {
    std::vector<TraceEvent> events;
    /// Reference point for TraceEvent::elapsed_ms.
    std::chrono::steady_clock::time_point origin =
        std::chrono::steady_clock::now();
    /// Largest decrease of |F| between consecutive updates of one phase.
    double max_fidelity_drop = 0.0;
    /// Largest deviation between incrementally updated and recomputed
    /// cursor states seen at a pass boundary.
    double max_cursor_drift = 0.0;

    /// Appends the event, stamping elapsed_ms and updating max_fidelity_drop.
    void record(TraceEvent event);

    /**
     * CSV with header phase,M,sweep,block,abs_fidelity,elapsed_ms. Unless
     * include_timing is set the elapsed_ms column is written as 0 so that
     * identical runs produce identical bytes.
     */
    void write_csv(std::ostream &out, bool include_timing = false) const;
    void write_csv(const std::filesystem::path &path,
                   bool include_timing = false) const;
};

/// How initialization ranks bonds.
enum class InitSelection {
    /// Leading eigenvalue minus the current |00> population, i.e. how much
    /// the rotation raises the |00> weight on that bond.
    kGain,
    /// Leading eigenvalue alone. A bond that was just rotated keeps its
    /// value, so it tends to be chosen again with a no-op rotation.
    kLeadingEigenvalue,
};

struct EncodeConfig {
    std::size_t m0 = 1;
    std::size_t m_max = 1;
    std::size_t delta_m = 1;
    std::size_t sweeps = 20;
    std::size_t final_sweeps = 0;
    BondSet bonds;
    EncodeMode mode = EncodeMode::kAutoStructure;
    std::size_t restarts = 1;
    std::uint64_t seed = 1;
    std::optional<double> fidelity_stop;
    InitSelection init_selection = InitSelection::kGain;

    /// Throws InputError on inconsistent settings.
    void validate() const;
};

/**
 * Named parameter sets (M0, N, dM, Mmax) for a chain of L sites, with
 * all-pairs bonds:
 *   paper-heis        (L, 20, L/2, L^2/2)
 *   paper-xy          (L, 20, L/2, max(L(L-5)/2, L^2/4))
 *   paper-xy-strict   (L, 20, L/2, L(L-5)/2)
 *   paper-image       (16, 100, 8, 16)
 *   paper-image-seg   (12, 100, 6, 12)
 * The image presets expect the caller to raise m_max.
 */
[[nodiscard]] EncodeConfig preset_config(const std::string &name,
                                         std::size_t num_qubits);

struct OptimalUnitary {
    Matrix4c unitary;
    double score = 0.0; ///< sum of singular values
};

/// U = X Y from F = X diag(d) Y; |tr(F U^dagger)| = sum(d).
[[nodiscard]] OptimalUnitary optimal_unitary(const Matrix4c &fidelity);

struct BlockUpdate {
    Bond bond;
    Matrix4c matrix;
    double score = 0.0;
};

/// bra/ket pair around block `position`, see the file comment.
struct SweepCursor {
    std::size_t position = 0;
    StateVector bra;
    StateVector ket;
};

/// Builds the cursor for block m from scratch.
[[nodiscard]] SweepCursor make_cursor(const Circuit &circuit,
                                      const StateVector &target,
                                      std::size_t m);

/**
 * Optimal replacement for block cursor.position. With a bond set every
 * bond is evaluated; without one the block keeps its own bond.
 */
[[nodiscard]] BlockUpdate best_update(const SweepCursor &cursor,
                                      const Circuit &circuit,
                                      const BondSet *bonds);

/// best_update() written back into the circuit.
BlockUpdate update_block(Circuit &circuit, std::size_t m,
                         const SweepCursor &cursor, const BondSet *bonds);

/**
 * One pass over all blocks (forward: m = 0..M-1, backward: m = M-1..0),
 * keeping the cursor up to date incrementally. Returns |F| afterwards.
 * Events are appended to trace when it is non-null.
 */
double sweep_pass(Circuit &circuit, const StateVector &target,
                  const BondSet *bonds, SweepDirection direction,
                  EncodeTrace *trace = nullptr,
                  TracePhase phase = TracePhase::kSweep,
                  std::size_t sweep_index = 0);

/// Forward pass followed by backward pass. Returns |F|.
double sweep(Circuit &circuit, const StateVector &target, const BondSet *bonds,
             EncodeTrace *trace = nullptr,
             TracePhase phase = TracePhase::kSweep,
             std::size_t sweep_index = 0);

/**
 * m0 blocks from reduced density matrices: repeatedly pick the best bond of
 * the partially disentangled target (see InitSelection) and rotate the
 * eigenbasis of its two-qubit density matrix onto the computational basis.
 * The last block found acts first on |0>. Within a degenerate eigenspace
 * the basis is a Haar rotation drawn from `seed`.
 */
[[nodiscard]] Circuit
initialize_circuit(const StateVector &target, const BondSet &bonds,
                   std::size_t m0, std::uint64_t seed = 1,
                   InitSelection selection = InitSelection::kGain,
                   EncodeTrace *trace = nullptr);

/**
 * Same construction, but along the bonds of a given layout: blocks are
 * filled from the last to the first using the layout's own bond.
 */
[[nodiscard]] Circuit initialize_along(const Circuit &layout,
                                       const StateVector &target,
                                       std::uint64_t seed = 1);

/**
 * Inserts delta_m identity blocks one at a time at position 0 (next to
 * |0>), each followed by a backward pass. Returns |F|.
 */
double enlarge(Circuit &circuit, const StateVector &target,
               std::size_t delta_m, const BondSet &bonds,
               EncodeTrace *trace = nullptr);

struct EncodeResult {
    Circuit circuit;
    EncodeTrace trace;
    Complex fidelity{0.0, 0.0};
    double abs_fidelity = 0.0;
    std::size_t restart = 0;
    std::uint64_t target_seed = 0;
};

/// Called after each optimization phase with the current circuit and |F|.
using PhaseCallback = std::function<void(const Circuit &, double)>;

/**
 * init(M0) -> N sweeps -> { enlarge(dM) -> N sweeps } until Mmax, then
 * final_sweeps more. Stops early once |F| >= fidelity_stop.
 */
[[nodiscard]] EncodeResult encode(const StateVector &target,
                                  const EncodeConfig &config,
                                  const PhaseCallback &on_phase = {});

enum class FixedInit {
    kReducedDensity, ///< initialize_along() on the layout
    kAsGiven,        ///< start from the layout's matrices
};

/// Sweeps a fixed layout; bonds never change.
[[nodiscard]] EncodeResult
encode_fixed(const StateVector &target, const Circuit &layout,
             std::size_t sweeps, FixedInit init = FixedInit::kReducedDensity,
             std::optional<double> fidelity_stop = std::nullopt,
             std::uint64_t seed = 1);

using TargetFactory = std::function<StateVector(std::uint64_t seed)>;

/**
 * Runs encode() for seeds config.seed + k, k = 0..restarts-1, keeps the
 * best |F| (earliest on ties), then applies final_sweeps to it.
 */
[[nodiscard]] EncodeResult encode_with_restarts(const TargetFactory &factory,
                                                const EncodeConfig &config,
                                                const PhaseCallback &on_phase =
                                                    {});

/// |F|^(1/L)
[[nodiscard]] double fidelity_per_site(double abs_fidelity,
                                       std::size_t num_qubits);

} // namespace aqce
