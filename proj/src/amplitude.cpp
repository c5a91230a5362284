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

#include "aqce/amplitude.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aqce/parallel.hpp"

namespace aqce {

namespace {

double sum_of_squares(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

std::size_t qubits_for(std::size_t length) {
    return length <= 1 ? 0
                       : static_cast<std::size_t>(std::bit_width(length - 1));
}

// Next whitespace-separated PGM header token, skipping '#' comments.
std::string header_token(std::istream &in) {
    std::string tok;
    while (true) {
        int ch = in.peek();
        if (ch == EOF) {
            throw IoError("PGM: truncated header");
        }
        if (std::isspace(ch)) {
            in.get();
        } else if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
        } else {
            break;
        }
    }
    while (in.peek() != EOF && !std::isspace(in.peek()) && in.peek() != '#') {
        tok.push_back(static_cast<char>(in.get()));
    }
    return tok;
}

std::size_t header_number(std::istream &in, const char *what) {
    const std::string tok = header_token(in);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != tok.size()) {
        throw IoError(std::string("PGM: bad ") + what + " '" + tok + "'");
    }
    return static_cast<std::size_t>(v);
}

} // namespace

ClassicalVector::ClassicalVector(std::vector<double> v)
    : values(std::move(v)), volume(sum_of_squares(values)) {}

StateVector amplitude_encode(const ClassicalVector &data) {
    if (data.values.empty()) {
        throw InputError("amplitude_encode: empty data");
    }
    for (double x : data.values) {
        if (!std::isfinite(x)) {
            throw InputError("amplitude_encode: non-finite value");
        }
    }
    const double volume = sum_of_squares(data.values);
    if (!(volume > 0.0)) {
        throw InputError("amplitude_encode: data has zero volume");
    }
    // A single value still needs one qubit.
    const std::size_t L = std::max<std::size_t>(1, qubits_for(data.values.size()));
    std::vector<Complex> amps(std::size_t{1} << L, Complex{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(volume);
    for (std::size_t n = 0; n < data.values.size(); ++n) {
        amps[n] = data.values[n] * scale;
    }
    StateVector s(L, std::move(amps));
    s.normalize();
    return s;
}

ClassicalVector amplitude_decode(const StateVector &state, double volume,
                                 std::size_t length, DecodeMode mode) {
    if (!(volume > 0.0)) {
        throw InputError("amplitude_decode: volume must be positive");
    }
    if (length > state.dimension()) {
        throw DimensionError("amplitude_decode: length exceeds 2^L");
    }
    const double scale = std::sqrt(volume);
    std::vector<double> out(length);
    for (std::size_t n = 0; n < length; ++n) {
        double x = scale * state[n].real();
        if (mode == DecodeMode::kClampNonNegative && x < 0.0) {
            x = 0.0;
        }
        out[n] = x;
    }
    return ClassicalVector(std::move(out));
}

ImageGrid::ImageGrid(std::size_t w, std::size_t h)
    : width(w), height(h), pixels(w * h, 0.0) {}

ImageGrid::ImageGrid(std::size_t w, std::size_t h, std::vector<double> values)
    : width(w), height(h), pixels(std::move(values)) {
    if (pixels.size() != w * h) {
        throw DimensionError("ImageGrid: pixel count does not match shape");
    }
}

Segmentation segment_image(const ImageGrid &image, std::size_t rows,
                           std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw InputError("segment_image: grid must be at least 1x1");
    }
    if (image.width == 0 || image.height == 0 || image.width % cols != 0 ||
        image.height % rows != 0) {
        throw InputError("segment_image: " + std::to_string(image.width) + "x" +
                         std::to_string(image.height) +
                         " image is not divisible into " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         " segments");
    }
    Segmentation seg;
    seg.rows = rows;
    seg.cols = cols;
    seg.segment_width = image.width / cols;
    seg.segment_height = image.height / rows;
    const std::size_t w = seg.segment_width;
    const std::size_t h = seg.segment_height;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<double> v(w * h);
            for (std::size_t y = 0; y < h; ++y) {
                for (std::size_t x = 0; x < w; ++x) {
                    v[x + w * y] = image.at(c * w + x, r * h + y);
                }
            }
            seg.segments.emplace_back(std::move(v));
        }
    }
    return seg;
}

ImageGrid assemble_image(const Segmentation &seg) {
    const std::size_t w = seg.segment_width;
    const std::size_t h = seg.segment_height;
    if (seg.segments.size() != seg.rows * seg.cols) {
        throw DimensionError("assemble_image: segment count mismatch");
    }
    ImageGrid img(w * seg.cols, h * seg.rows);
    for (std::size_t r = 0; r < seg.rows; ++r) {
        for (std::size_t c = 0; c < seg.cols; ++c) {
            const auto &v = seg.segments[c + seg.cols * r].values;
            if (v.size() != w * h) {
                throw DimensionError("assemble_image: segment size mismatch");
            }
            for (std::size_t y = 0; y < h; ++y) {
                for (std::size_t x = 0; x < w; ++x) {
                    img.at(c * w + x, r * h + y) = v[x + w * y];
                }
            }
        }
    }
    return img;
}

ImageGrid read_pgm(std::istream &in) {
    const std::string magic = header_token(in);
    if (magic != "P2" && magic != "P5") {
        throw IoError("PGM: expected P2 or P5 magic, got '" + magic + "'");
    }
    const std::size_t w = header_number(in, "width");
    const std::size_t h = header_number(in, "height");
    const std::size_t maxval = header_number(in, "maxval");
    if (w == 0 || h == 0) {
        throw IoError("PGM: empty image");
    }
    if (maxval == 0 || maxval > 255) {
        throw IoError("PGM: maxval must be in 1..255");
    }
    std::vector<double> px(w * h);
    if (magic == "P5") {
        // Exactly one whitespace byte separates the header from the raster.
        in.get();
        std::vector<unsigned char> raw(w * h);
        in.read(reinterpret_cast<char *>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
            throw IoError("PGM: truncated raster");
        }
        for (std::size_t k = 0; k < raw.size(); ++k) {
            if (raw[k] > maxval) {
                throw IoError("PGM: pixel exceeds maxval");
            }
            px[k] = raw[k];
        }
    } else {
        for (std::size_t k = 0; k < px.size(); ++k) {
            const std::size_t v = header_number(in, "pixel");
            if (v > maxval) {
                throw IoError("PGM: pixel exceeds maxval");
            }
            px[k] = static_cast<double>(v);
        }
    }
    return ImageGrid(w, h, std::move(px));
}

ImageGrid read_pgm(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return read_pgm(in);
    } catch (const IoError &e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_pgm(std::ostream &out, const ImageGrid &image) {
    if (image.pixels.size() != image.width * image.height) {
        throw DimensionError("write_pgm: pixel count does not match shape");
    }
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.pixels.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const double v = image.pixels[k];
        const double c = std::isfinite(v) ? std::clamp(std::round(v), 0.0, 255.0)
                                          : 0.0;
        raw[k] = static_cast<unsigned char>(c);
    }
    out.write(reinterpret_cast<const char *>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
}

void write_pgm(const std::filesystem::path &path, const ImageGrid &image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_pgm(out, image);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

ClassicalVector read_vector_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<double> v;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        double x = 0.0;
        if (!(ls >> x)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": expected a number");
            }
            continue;
        }
        std::string rest;
        if (ls >> rest) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected one number per line");
        }
        v.push_back(x);
    }
    return ClassicalVector(std::move(v));
}

void write_vector_file(const std::filesystem::path &path,
                       const ClassicalVector &data) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    char buf[64];
    for (double x : data.values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out << buf;
    }
}

ClassicalVector decode_circuit(const Circuit &circuit, Complex fidelity,
                               double volume, std::size_t length) {
    StateVector s = evaluate(circuit);
    // C|0> ~ e^{i phi} target with F = e^{-i phi}.
    const double mag = std::abs(fidelity);
    const Complex align = mag > 0.0 ? fidelity / mag : Complex{1.0, 0.0};
    for (std::size_t n = 0; n < s.dimension(); ++n) {
        s[n] *= align;
    }
    return amplitude_decode(s, volume, length, DecodeMode::kClampNonNegative);
}

ImagePipelineResult encode_image_pipeline(const ImageGrid &image,
                                          std::size_t rows, std::size_t cols,
                                          const ImageEncodeConfig &config) {
    ImagePipelineResult result;
    result.segmentation = segment_image(image, rows, cols);
    const auto &segs = result.segmentation.segments;
    const std::size_t length = segs.front().values.size();
    const std::size_t L = std::max<std::size_t>(1, qubits_for(length));
    if (L < 2) {
        throw InputError("encode_image_pipeline: segments need at least "
                         "3 pixels (2 qubits)");
    }
    EncodeConfig base = config.encode;
    if (base.bonds.empty()) {
        base.bonds = all_pairs_bonds(L);
    }
    base.validate();

    result.segments.resize(segs.size());
    parallel_for(segs.size(), [&](std::size_t k) {
        const auto start = std::chrono::steady_clock::now();
        SegmentResult &out = result.segments[k];
        out.index = k;
        out.num_qubits = L;
        out.volume = segs[k].volume;
        if (!(out.volume > 0.0)) {
            out.trivial = true;
            out.encoding.abs_fidelity = 1.0;
            out.encoding.fidelity = 1.0;
            out.encoding.circuit = Circuit(L);
            for (std::size_t m : config.checkpoints) {
                out.checkpoints.push_back(
                    {m, 1.0, ClassicalVector(std::vector<double>(length))});
            }
            return;
        }
        const StateVector target = amplitude_encode(segs[k]);
        const auto on_phase = [&](const Circuit &c, double) {
            if (std::find(config.checkpoints.begin(), config.checkpoints.end(),
                          c.size()) == config.checkpoints.end()) {
                return;
            }
            const Complex f = circuit_fidelity(c, target);
            SegmentCheckpoint cp{c.size(), std::abs(f),
                                 decode_circuit(c, f, out.volume, length)};
            auto it = std::find_if(
                out.checkpoints.begin(), out.checkpoints.end(),
                [&](const SegmentCheckpoint &p) { return p.num_blocks == c.size(); });
            if (it == out.checkpoints.end()) {
                out.checkpoints.push_back(std::move(cp));
            } else {
                *it = std::move(cp);
            }
        };
        out.encoding = encode(target, base, on_phase);
        out.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    });

    Segmentation rebuilt = result.segmentation;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const auto &s = result.segments[k];
        rebuilt.segments[k] =
            s.trivial ? ClassicalVector(std::vector<double>(length))
                      : decode_circuit(s.encoding.circuit, s.encoding.fidelity,
                                       s.volume, length);
    }
    result.reconstruction = assemble_image(rebuilt);

    for (std::size_t m : config.checkpoints) {
        Segmentation snap = result.segmentation;
        bool complete = true;
        for (std::size_t k = 0; k < segs.size() && complete; ++k) {
            const auto &cps = result.segments[k].checkpoints;
            auto it = std::find_if(cps.begin(), cps.end(),
                                   [&](const SegmentCheckpoint &p) {
                                       return p.num_blocks == m;
                                   });
            if (it == cps.end()) {
                complete = false;
            } else {
                snap.segments[k] = it->values;
            }
        }
        if (complete) {
            result.checkpoint_images.emplace(m, assemble_image(snap));
        }
    }
    return result;
}

void write_segment_report(std::ostream &out, const ImagePipelineResult &result,
                          bool include_timing) {
    out << "segment,ms,L,M,abs_fidelity,f_ps,volume\n";
    char buf[256];
    for (const auto &s : result.segments) {
        const double f = s.encoding.abs_fidelity;
        std::snprintf(buf, sizeof buf, "%zu,%.3f,%zu,%zu,%.17g,%.17g,%.17g\n",
                      s.index, include_timing ? s.elapsed_ms : 0.0,
                      s.num_qubits,
                      s.encoding.circuit.size(), f,
                      fidelity_per_site(f, s.num_qubits), s.volume);
        out << buf;
    }
}

void write_segment_report(const std::filesystem::path &path,
                          const ImagePipelineResult &result,
                          bool include_timing) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_segment_report(out, result, include_timing);
}

double mean_square_error(const ImageGrid &a, const ImageGrid &b) {
    if (a.width != b.width || a.height != b.height ||
        a.pixels.size() != b.pixels.size() || a.pixels.empty()) {
        throw DimensionError("mean_square_error: image shapes differ");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.pixels.size(); ++k) {
        const double d = a.pixels[k] - b.pixels[k];
        s += d * d;
    }
    return s / static_cast<double>(a.pixels.size());
}

} // namespace aqce
