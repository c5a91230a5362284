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
 * Amplitude encoding of classical vectors and grayscale images.
 *
 * Data x_0..x_{N-1} with volume V = sum x_n^2 maps to
 * sum_n (x_n / sqrt(V)) |n> on ceil(log2 N) qubits, zero-padded. Image
 * pixel (ix, iy) of a width-w image sits at index ix + w iy.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "aqce/encoder.hpp"

namespace aqce {

struct ClassicalVector {
    std::vector<double> values;
    double volume = 0.0; ///< sum of squares

    ClassicalVector() = default;
    explicit ClassicalVector(std::vector<double> v);
};

/// Throws InputError for empty or all-zero data.
[[nodiscard]] StateVector amplitude_encode(const ClassicalVector &data);

enum class DecodeMode {
    kRealPart,        ///< sqrt(V) Re(amplitude)
    kClampNonNegative ///< as kRealPart, negatives set to 0
};

/// First `length` reconstructed values. The volume of the result is
/// recomputed from the decoded values.
[[nodiscard]] ClassicalVector
amplitude_decode(const StateVector &state, double volume, std::size_t length,
                 DecodeMode mode = DecodeMode::kRealPart);

struct ImageGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels; ///< pixel (ix, iy) at ix + width * iy

    ImageGrid() = default;
    ImageGrid(std::size_t w, std::size_t h);
    ImageGrid(std::size_t w, std::size_t h, std::vector<double> values);

    [[nodiscard]] double at(std::size_t ix, std::size_t iy) const {
        return pixels[ix + width * iy];
    }
    double &at(std::size_t ix, std::size_t iy) {
        return pixels[ix + width * iy];
    }
};

/**
 * A rows x cols grid of equally sized tiles. Tile (r, c) is
 * segments[c + cols * r] and covers columns [c w, (c + 1) w) and rows
 * [r h, (r + 1) h), stored with the local rule ix' + w iy'.
 */
struct Segmentation {
    std::size_t rows = 1;
    std::size_t cols = 1;
    std::size_t segment_width = 0;
    std::size_t segment_height = 0;
    std::vector<ClassicalVector> segments;
};

/// Throws InputError when the image does not divide evenly.
[[nodiscard]] Segmentation segment_image(const ImageGrid &image,
                                         std::size_t rows, std::size_t cols);

[[nodiscard]] ImageGrid assemble_image(const Segmentation &segmentation);

/// P2 or P5 with maxval <= 255. Pixel values are kept as read.
[[nodiscard]] ImageGrid read_pgm(const std::filesystem::path &path);
[[nodiscard]] ImageGrid read_pgm(std::istream &in);

/// Binary P5, maxval 255; pixels are rounded and clamped to [0, 255].
void write_pgm(const std::filesystem::path &path, const ImageGrid &image);
void write_pgm(std::ostream &out, const ImageGrid &image);

/// One real per line; blank lines and '#' comments are skipped.
[[nodiscard]] ClassicalVector read_vector_file(const std::filesystem::path &path);
void write_vector_file(const std::filesystem::path &path,
                       const ClassicalVector &data);

struct ImageEncodeConfig {
    /// Per-segment schedule. An empty bond set means all pairs on the
    /// segment's qubit count.
    EncodeConfig encode;
    /// Circuit sizes M at which reconstructions are also kept.
    std::vector<std::size_t> checkpoints;
};

struct SegmentCheckpoint {
    std::size_t num_blocks = 0;
    double abs_fidelity = 0.0;
    ClassicalVector values; ///< decoded, clamped
};

struct SegmentResult {
    std::size_t index = 0;
    std::size_t num_qubits = 0;
    double volume = 0.0;
    double elapsed_ms = 0.0;
    /// All-zero tiles are reproduced exactly without a circuit.
    bool trivial = false;
    EncodeResult encoding;
    std::vector<SegmentCheckpoint> checkpoints;
};

struct ImagePipelineResult {
    Segmentation segmentation;
    std::vector<SegmentResult> segments;
    ImageGrid reconstruction;
    /// Reconstructions at the requested checkpoint sizes reached by every
    /// segment.
    std::map<std::size_t, ImageGrid> checkpoint_images;
};

/**
 * Segments the image, encodes every tile independently (concurrently when
 * threads allow) and reassembles the decoded tiles. The circuit state is
 * aligned to the target's global phase via F before decoding.
 */
[[nodiscard]] ImagePipelineResult
encode_image_pipeline(const ImageGrid &image, std::size_t rows,
                      std::size_t cols, const ImageEncodeConfig &config);

/// Decoded values of a circuit for a target with the given volume and
/// length, with the global phase aligned through the fidelity.
[[nodiscard]] ClassicalVector decode_circuit(const Circuit &circuit,
                                             Complex fidelity, double volume,
                                             std::size_t length);

/// CSV: segment,ms,L,M,abs_fidelity,f_ps,volume. The ms column is 0
/// unless include_timing is set, keeping reruns byte-identical.
void write_segment_report(std::ostream &out, const ImagePipelineResult &result,
                          bool include_timing = false);
void write_segment_report(const std::filesystem::path &path,
                          const ImagePipelineResult &result,
                          bool include_timing = false);

/// Mean of squared pixel differences; images must have equal shape.
[[nodiscard]] double mean_square_error(const ImageGrid &a, const ImageGrid &b);

} // namespace aqce
