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
#include <sstream>

#include "aqce/amplitude.hpp"

using namespace aqce;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "aqce_test_amplitude";
    std::filesystem::create_directories(dir);
    return dir / name;
}

ImageGrid random_image(std::size_t w, std::size_t h, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> px(0, 255);
    ImageGrid img(w, h);
    for (double &p : img.pixels) {
        p = px(rng);
    }
    return img;
}

} // namespace

TEST_CASE("amplitude encoding examples", "[amplitude]") {
    const StateVector a = amplitude_encode(ClassicalVector({1, 0, 0, 0}));
    CHECK(a.num_qubits() == 2);
    CHECK(a[0] == Complex(1.0, 0.0));
    const StateVector u = amplitude_encode(ClassicalVector({1, 1, 1, 1}));
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK_THAT(u[n].real(), WithinAbs(0.5, 1e-15));
    }
    // Zero padding to the next power of two.
    const StateVector p = amplitude_encode(ClassicalVector({3, 4, 0, 0, 12}));
    CHECK(p.num_qubits() == 3);
    CHECK_THAT(p[4].real(), WithinAbs(12.0 / 13.0, 1e-15));
    CHECK(p[7] == Complex(0.0, 0.0));
    CHECK(amplitude_encode(ClassicalVector(std::vector<double>(65536, 1.0))).num_qubits() == 16);
    CHECK_THROWS_AS(amplitude_encode(ClassicalVector({0, 0})), InputError);
    CHECK_THROWS_AS(amplitude_encode(ClassicalVector()), InputError);
}

TEST_CASE("amplitude decoding", "[amplitude]") {
    const ClassicalVector x({3, 4});
    CHECK_THAT(x.volume, WithinAbs(25.0, 0.0));
    const ClassicalVector back = amplitude_decode(amplitude_encode(x), x.volume, 2);
    CHECK_THAT(back.values[0], WithinAbs(3.0, 1e-12));
    CHECK_THAT(back.values[1], WithinAbs(4.0, 1e-12));
    const ClassicalVector z = amplitude_decode(StateVector(2), 25.0, 4);
    CHECK(z.values == std::vector<double>{5, 0, 0, 0});

    std::vector<Complex> amps{{-0.6, 0.0}, {0.0, 0.8}};
    const StateVector s(1, amps);
    CHECK_THAT(amplitude_decode(s, 1.0, 2).values[0], WithinAbs(-0.6, 1e-15));
    CHECK(amplitude_decode(s, 1.0, 2, DecodeMode::kClampNonNegative).values[0] == 0.0);
    CHECK_THROWS_AS(amplitude_decode(s, 1.0, 3), DimensionError);
    CHECK_THROWS_AS(amplitude_decode(s, 0.0, 1), InputError);

    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> d(0.0, 10.0);
    std::vector<double> v(100);
    for (double &e : v) {
        e = d(rng);
    }
    const ClassicalVector cv(v);
    const ClassicalVector rt = amplitude_decode(amplitude_encode(cv), cv.volume, v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        CHECK_THAT(rt.values[k], WithinRel(v[k], 1e-12));
    }
}

TEST_CASE("segmentation is lossless", "[amplitude]") {
    std::mt19937_64 rng(82);
    const ImageGrid img = random_image(12, 8, rng);
    for (auto [r, c] : {std::pair{1, 1}, {2, 2}, {4, 3}, {8, 12}, {2, 6}}) {
        const Segmentation seg = segment_image(img, r, c);
        CHECK(seg.segments.size() == static_cast<std::size_t>(r * c));
        std::size_t total = 0;
        for (const auto &s : seg.segments) {
            total += s.values.size();
        }
        CHECK(total == img.pixels.size());
        const ImageGrid back = assemble_image(seg);
        CHECK(back.width == img.width);
        CHECK(back.pixels == img.pixels);
    }
    // Local indexing: tile (1, 0) of a 4x4 image in 2x2 starts at row 2.
    ImageGrid four(4, 4);
    for (std::size_t k = 0; k < 16; ++k) {
        four.pixels[k] = static_cast<double>(k);
    }
    const Segmentation s4 = segment_image(four, 2, 2);
    CHECK(s4.segments[2].values == std::vector<double>{8, 9, 12, 13});
    CHECK(s4.segments[1].values == std::vector<double>{2, 3, 6, 7});
    CHECK(segment_image(four, 1, 1).segments[0].values == four.pixels);
    CHECK_THROWS_AS(segment_image(four, 3, 3), InputError);
}

TEST_CASE("PGM reading and writing", "[amplitude][io]") {
    std::istringstream p2("P2\n# comment\n3 2\n255\n0 1 2\n253 254 255\n");
    const ImageGrid a = read_pgm(p2);
    CHECK(a.width == 3);
    CHECK(a.height == 2);
    CHECK(a.pixels == std::vector<double>{0, 1, 2, 253, 254, 255});

    std::ostringstream out;
    write_pgm(out, a);
    std::istringstream p5(out.str());
    CHECK(read_pgm(p5).pixels == a.pixels);
    CHECK(out.str().rfind("P5\n3 2\n255\n", 0) == 0);

    ImageGrid wild(2, 1, {-3.0, 300.7});
    std::ostringstream w;
    write_pgm(w, wild);
    std::istringstream wr(w.str());
    CHECK(read_pgm(wr).pixels == std::vector<double>{0, 255});

    std::istringstream bad_max("P2 1 1 65535 7");
    CHECK_THROWS_AS(read_pgm(bad_max), IoError);
    std::istringstream bad_magic("P6 1 1 255 7");
    CHECK_THROWS_AS(read_pgm(bad_magic), IoError);
    std::istringstream truncated("P5 4 4 255\nab");
    CHECK_THROWS_AS(read_pgm(truncated), IoError);
    std::istringstream over("P2 1 1 10 11");
    CHECK_THROWS_AS(read_pgm(over), IoError);

    const auto file = scratch("img.pgm");
    write_pgm(file, a);
    CHECK(read_pgm(file).pixels == a.pixels);
}

TEST_CASE("vector files", "[amplitude][io]") {
    const auto file = scratch("v.txt");
    {
        std::ofstream out(file);
        out << "# data\n1.5\n\n-2\n3e-1\n";
    }
    const ClassicalVector v = read_vector_file(file);
    CHECK(v.values == std::vector<double>{1.5, -2.0, 0.3});
    CHECK_THAT(v.volume, WithinAbs(1.5 * 1.5 + 4 + 0.09, 1e-15));
    write_vector_file(file, v);
    CHECK(read_vector_file(file).values == v.values);
    {
        std::ofstream out(file);
        out << "1 2\n";
    }
    CHECK_THROWS_AS(read_vector_file(file), IoError);
}

TEST_CASE("constant image is reproduced by a small circuit", "[amplitude]") {
    const ImageGrid img(4, 4, std::vector<double>(16, 100.0));
    ImageEncodeConfig cfg;
    cfg.encode.m0 = 2;
    cfg.encode.m_max = 2;
    cfg.encode.sweeps = 5;
    const ImagePipelineResult r = encode_image_pipeline(img, 1, 1, cfg);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0].num_qubits == 4);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK_THAT(r.reconstruction.pixels[k], WithinAbs(100.0, 1e-6));
    }
}

TEST_CASE("image pipeline improves with circuit size", "[amplitude]") {
    std::mt19937_64 rng(83);
    const ImageGrid img = random_image(16, 16, rng);
    ImageEncodeConfig cfg;
    cfg.encode.m0 = 8;
    cfg.encode.m_max = 32;
    cfg.encode.delta_m = 8;
    cfg.encode.sweeps = 10;
    cfg.checkpoints = {8, 16, 32};
    const ImagePipelineResult r = encode_image_pipeline(img, 1, 1, cfg);
    REQUIRE(r.checkpoint_images.size() == 3);
    const auto &cps = r.segments[0].checkpoints;
    REQUIRE(cps.size() == 3);
    CHECK(cps[1].abs_fidelity >= cps[0].abs_fidelity - 1e-9);
    CHECK(cps[2].abs_fidelity >= cps[1].abs_fidelity - 1e-9);
    const double e8 = mean_square_error(img, r.checkpoint_images.at(8));
    const double e16 = mean_square_error(img, r.checkpoint_images.at(16));
    const double e32 = mean_square_error(img, r.checkpoint_images.at(32));
    CHECK(e16 < e8);
    CHECK(e32 < e16);
    CHECK_THAT(e32, WithinAbs(mean_square_error(img, r.reconstruction), 1e-9));
}

TEST_CASE("segments encode independently", "[amplitude]") {
    std::mt19937_64 rng(84);
    ImageGrid img = random_image(8, 8, rng);
    // One all-black tile needs no circuit.
    for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t x = 0; x < 4; ++x) {
            img.at(x, y) = 0.0;
        }
    }
    ImageEncodeConfig cfg;
    cfg.encode.m0 = 4;
    cfg.encode.m_max = 4;
    cfg.encode.sweeps = 5;
    const ImagePipelineResult r = encode_image_pipeline(img, 2, 2, cfg);
    REQUIRE(r.segments.size() == 4);
    CHECK(r.segments[0].trivial);
    CHECK(r.segments[0].encoding.circuit.size() == 0);
    for (std::size_t k = 1; k < 4; ++k) {
        CHECK(r.segments[k].num_qubits == 4);
        CHECK(r.segments[k].encoding.circuit.size() == 4);
        CHECK_THAT(r.segments[k].volume,
                   WithinRel(r.segmentation.segments[k].volume, 1e-15));
    }
    for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t x = 0; x < 4; ++x) {
            CHECK(r.reconstruction.at(x, y) == 0.0);
        }
    }
    std::ostringstream csv;
    write_segment_report(csv, r);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "segment,ms,L,M,abs_fidelity,f_ps,volume");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.rfind(std::to_string(rows - 1) + ",0.000,4,", 0) == 0);
    }
    CHECK(rows == 4);
}
