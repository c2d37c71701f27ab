#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "test_util.hpp"
#include "wavefuse/imgio.hpp"

using namespace wavefuse;

namespace {

std::string data(const char* name) { return std::string(TEST_DATA_DIR "/") + name; }

std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / (std::string("wavefuse_io_") + name))
        .string();
}

} // namespace

TEST_CASE("png loader reads planes in the right order") {
    const ImageBuffer img = load_image(data("ramp_rgb_8x8.png"));
    CHECK(img.width == 8);
    CHECK(img.height == 8);
    CHECK(img.channels == 3);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            CHECK(img.at(x, y, 0) == doctest::Approx(y * 8 + x));
            CHECK(img.at(x, y, 1) == 7.0);
            CHECK(img.at(x, y, 2) == 200.0);
        }
}

TEST_CASE("pgm and png encodings of the same raster load identically") {
    const ImageBuffer a = load_image(data("checker_8x8.pgm"));
    const ImageBuffer b = load_image(data("checker_8x8.png"));
    REQUIRE(a.same_shape(b));
    CHECK(a.channels == 1);
    CHECK(testutil::max_abs_diff(a, b) == 0.0);
    CHECK(a.at(0, 0) == 0.0);
    CHECK(a.at(1, 0) == 255.0);
}

TEST_CASE("loader rejects what it cannot faithfully represent") {
    CHECK_THROWS_AS(load_image(data("tiny_2x2.pgm")), ImageTooSmall);
    CHECK_THROWS_AS(load_image(data("rgba_8x8.png")), UnsupportedFormat);
    CHECK_THROWS_AS(load_image(data("gray_alpha_8x8.png")), UnsupportedFormat);
    CHECK_THROWS_AS(load_image(data("gray16_8x8.png")), UnsupportedFormat);
    CHECK_THROWS_AS(load_image(data("palette_8x8.png")), UnsupportedFormat);
    CHECK_THROWS_AS(load_image(data("no_such_file.png")), FileNotFound);
}

TEST_CASE("loader rejects non-image bytes and ascii pgm") {
    const std::string junk = tmp_path("junk.png");
    std::ofstream(junk) << "definitely not an image";
    CHECK_THROWS_AS(load_image(junk), UnsupportedFormat);

    const std::string ascii = tmp_path("ascii.pgm");
    std::ofstream(ascii) << "P2\n4 4\n255\n0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
    CHECK_THROWS_AS(load_image(ascii), UnsupportedFormat);
}

TEST_CASE("pgm header comments and odd whitespace are tolerated") {
    const std::string path = tmp_path("comments.pgm");
    std::ofstream out(path, std::ios::binary);
    out << "P5 # magic\n# a comment line\n  5\n# another\n4 255\n";
    for (int i = 0; i < 20; ++i) out.put(static_cast<char>(i * 3));
    out.close();
    const ImageBuffer img = load_image(path);
    CHECK(img.width == 5);
    CHECK(img.height == 4);
    CHECK(img.at(2, 1) == 21.0); // sample index 7
}

TEST_CASE("truncated pgm raster is an io error") {
    const std::string path = tmp_path("short.pgm");
    std::ofstream out(path, std::ios::binary);
    out << "P5\n8 8\n255\n";
    for (int i = 0; i < 10; ++i) out.put(char(1));
    out.close();
    CHECK_THROWS_AS(load_image(path), IoError);
}

TEST_CASE("integer buffers survive a save/load round trip exactly") {
    ImageBuffer gray(6, 5, 1);
    testutil::Lcg rng(31);
    for (double& s : gray.samples) s = std::floor(rng.next() * 256.0);

    for (const char* name : {"rt.png", "rt.pgm"}) {
        const std::string path = tmp_path(name);
        save_image(gray, path);
        const ImageBuffer back = load_image(path);
        REQUIRE(back.same_shape(gray));
        CHECK(testutil::max_abs_diff(back, gray) == 0.0);
    }

    ImageBuffer rgb(5, 7, 3);
    for (double& s : rgb.samples) s = std::floor(rng.next() * 256.0);
    const std::string path = tmp_path("rt_rgb.png");
    save_image(rgb, path);
    const ImageBuffer back = load_image(path);
    REQUIRE(back.same_shape(rgb));
    CHECK(testutil::max_abs_diff(back, rgb) == 0.0);
}

TEST_CASE("saving quantizes by clamping then rounding half away from zero") {
    ImageBuffer img(4, 4, 1);
    img.samples[0] = 127.5;  // -> 128
    img.samples[1] = 254.49; // -> 254
    img.samples[2] = -3.0;   // -> 0
    img.samples[3] = 300.0;  // -> 255
    img.samples[4] = 0.5;    // -> 1
    const std::string path = tmp_path("quant.pgm");
    save_image(img, path);
    const ImageBuffer back = load_image(path);
    CHECK(back.samples[0] == 128.0);
    CHECK(back.samples[1] == 254.0);
    CHECK(back.samples[2] == 0.0);
    CHECK(back.samples[3] == 255.0);
    CHECK(back.samples[4] == 1.0);
}

TEST_CASE("save rejects impossible requests") {
    const ImageBuffer rgb = testutil::random_image(4, 4, 3, 5);
    CHECK_THROWS_AS(save_image(rgb, tmp_path("x.pgm")), UnsupportedFormat);
    CHECK_THROWS_AS(save_image(rgb, tmp_path("x.bmp")), UnsupportedFormat);
    CHECK_THROWS_AS(save_image(rgb, "/nonexistent_dir_zz/x.png"), IoError);
}

TEST_CASE("bilinear resize keeps constants and hits requested dimensions") {
    ImageBuffer flat(9, 7, 1, 42.5);
    const ImageBuffer up = resize_bilinear(flat, 16, 12);
    CHECK(up.width == 16);
    CHECK(up.height == 12);
    for (double s : up.samples) CHECK(s == 42.5);

    const ImageBuffer same = resize_bilinear(flat, 9, 7);
    CHECK(testutil::max_abs_diff(same, flat) == 0.0);
}

TEST_CASE("bilinear downscale of a smooth ramp stays within the ramp range") {
    ImageBuffer ramp(16, 16, 1);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) ramp.at(x, y) = 10.0 * x;
    const ImageBuffer down = resize_bilinear(ramp, 8, 8);
    for (int y = 0; y < 8; ++y) {
        // doubled x spacing: interior samples land between source columns
        CHECK(down.at(1, y) == doctest::Approx(25.0));
        CHECK(down.at(7, y) >= 140.0);
        CHECK(down.at(7, y) <= 150.0);
    }
}

TEST_CASE("register_pair replicates gray to rgb and resamples to the first image") {
    const ImageBuffer gray = testutil::random_image(8, 8, 1, 77);
    const ImageBuffer rgb = testutil::random_image(12, 10, 3, 78);

    auto [a, b] = register_pair(gray, rgb);
    CHECK(a.channels == 3);
    CHECK(b.channels == 3);
    CHECK(b.width == 8);
    CHECK(b.height == 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            CHECK(a.at(x, y, 0) == a.at(x, y, 1));
            CHECK(a.at(x, y, 1) == a.at(x, y, 2));
        }
}

TEST_CASE("register_pair leaves an already matched pair untouched") {
    const ImageBuffer u = testutil::random_image(9, 6, 3, 11);
    const ImageBuffer v = testutil::random_image(9, 6, 3, 12);
    auto [a, b] = register_pair(u, v);
    CHECK(testutil::max_abs_diff(a, u) == 0.0);
    CHECK(testutil::max_abs_diff(b, v) == 0.0);
}

TEST_CASE("split and merge are inverse") {
    const ImageBuffer rgb = testutil::random_image(7, 5, 3, 3);
    const auto planes = split_channels(rgb);
    REQUIRE(planes.size() == 3);
    const ImageBuffer back = merge_channels(planes);
    CHECK(back.same_shape(rgb));
    CHECK(testutil::max_abs_diff(back, rgb) == 0.0);

    CHECK_THROWS_AS(merge_channels({planes[0], planes[1]}), ShapeMismatch);
}
