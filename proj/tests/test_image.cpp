#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isowave/errors.hpp"
#include "isowave/formats.hpp"
#include "isowave/image.hpp"

using namespace isowave;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "isowave_test_image";
    fs::create_directories(dir);
    return dir;
}

void write_bytes(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("row-major index bijection") {
    std::mt19937 rng(11);
    const std::vector<Dims> shapes = {{1}, {5}, {2, 3}, {4, 1, 6}, {3, 5, 2, 2}};
    for (const Dims& dims : shapes) {
        const std::size_t total = total_size(dims);
        for (std::size_t i = 0; i < total; ++i)
            CHECK(flat_index(dims, coords_of(dims, i)) == i);
        // strides: last axis contiguous
        const auto strides = row_major_strides(dims);
        CHECK(strides.back() == 1);
        for (std::size_t a = 0; a + 1 < dims.size(); ++a)
            CHECK(strides[a] == strides[a + 1] * dims[a + 1]);
    }
    CHECK_THROWS_AS(flat_index({2, 2}, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(flat_index({2, 2}, {0}), std::invalid_argument);
}

TEST_CASE("image validation") {
    RealImage image({2, 3});
    CHECK(image.size() == 6);
    CHECK(image.spacing == std::vector<double>{1.0, 1.0});
    image.validate();

    image.data.pop_back();
    CHECK_THROWS_AS(image.validate(), std::invalid_argument);

    RealImage bad_spacing({2, 2});
    bad_spacing.spacing[0] = 0.0;
    CHECK_THROWS_AS(bad_spacing.validate(), std::invalid_argument);

    CHECK_THROWS_AS(RealImage(Dims{2, 0}).validate(), std::invalid_argument);
}

TEST_CASE("spectrum metadata defaults") {
    ComplexSpectrum spectrum({4, 8});
    spectrum.validate();
    CHECK(spectrum.layout == FrequencyLayout::Standard);
    CHECK(spectrum.frequency_spacing[0] == doctest::Approx(2.0 * 3.14159265358979 / 4));
    CHECK(spectrum.frequency_spacing[1] == doctest::Approx(2.0 * 3.14159265358979 / 8));
    CHECK(spectrum.frequency_origin == std::vector<double>{0.0, 0.0});

    CHECK(to_string(FrequencyLayout::Shifted) == "shifted");
    CHECK(layout_from_string("physical") == FrequencyLayout::Physical);
    CHECK_THROWS_AS(layout_from_string("sideways"), std::invalid_argument);
}

TEST_CASE("pgm ascii read") {
    const fs::path path = scratch_dir() / "ascii.pgm";
    write_bytes(path, "P2\n# a comment\n2 2\n255\n0 64\n128 255\n");
    const RealImage image = read_pgm(path);
    CHECK(image.dims == Dims{2, 2});
    CHECK(image.data == std::vector<double>{0, 64, 128, 255});
}

TEST_CASE("pgm round trip preserves integer samples") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> value(0, 255);
    RealImage image({5, 7});
    for (double& v : image.data) v = value(rng);

    const fs::path path = scratch_dir() / "roundtrip.pgm";
    write_pgm(image, path);
    CHECK(read_pgm(path).data == image.data);

    write_pgm(image, path, /*ascii=*/true);
    CHECK(read_pgm(path).data == image.data);
}

TEST_CASE("pgm 16-bit samples are big-endian") {
    const fs::path path = scratch_dir() / "deep.pgm";
    // 1x2, maxval 65535: values 0x0102 = 258 and 0xFF00 = 65280.
    std::string bytes = "P5\n2 1\n65535\n";
    const char payload[] = {0x01, 0x02, '\xFF', 0x00};
    bytes.append(payload, 4);
    write_bytes(path, bytes);
    const RealImage image = read_pgm(path);
    CHECK(image.dims == Dims{1, 2});
    CHECK(image.data == std::vector<double>{258, 65280});

    // and the writer picks maxval 65535 exactly when needed
    const fs::path out = scratch_dir() / "deep_out.pgm";
    write_pgm(image, out);
    CHECK(read_pgm(out).data == image.data);
}

TEST_CASE("pgm rejects bad inputs") {
    const fs::path path = scratch_dir() / "bad.pgm";
    write_bytes(path, "P6\n2 2\n255\n");
    CHECK_THROWS_AS(read_pgm(path), IoError);
    CHECK_THROWS_AS(read_pgm(scratch_dir() / "missing.pgm"), IoError);

    RealImage volume({2, 2, 2});
    CHECK_THROWS_AS(write_pgm(volume, scratch_dir() / "vol.pgm"),
                    std::invalid_argument);
}

TEST_CASE("ndf real image round trip and payload size") {
    RealImage image({2, 2, 2});
    const fs::path path = scratch_dir() / "zeros.ndf";
    write_ndf(image, path);

    // header is ASCII up to the blank line, then 8 doubles = 64 bytes
    std::ifstream in(path, std::ios::binary);
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    const std::string header = "NDF1\ndims 2 2 2\ndtype f64\nlayout spatial\n\n";
    REQUIRE(contents.size() == header.size() + 64);
    CHECK(contents.substr(0, header.size()) == header);

    const RealImage back = read_ndf_image(path);
    CHECK(back.dims == image.dims);
    CHECK(back.data == image.data);
}

TEST_CASE("ndf complex round trip is bit exact") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    ComplexSpectrum spectrum({3, 4}, FrequencyLayout::Shifted);
    for (auto& v : spectrum.data) v = {value(rng), value(rng)};

    const fs::path path = scratch_dir() / "complex.ndf";
    write_ndf(spectrum, path);
    const ComplexSpectrum back = read_ndf_spectrum(path);
    CHECK(back.layout == FrequencyLayout::Shifted);
    CHECK(back.dims == spectrum.dims);
    CHECK(back.data == spectrum.data);
}

TEST_CASE("ndf header and payload errors") {
    const fs::path dir = scratch_dir();

    write_bytes(dir / "magic.ndf", "NDX1\ndims 2\ndtype f64\nlayout spatial\n\n");
    CHECK_THROWS_AS(read_ndf(dir / "magic.ndf"), IoError);

    write_bytes(dir / "dtype.ndf", "NDF1\ndims 2\ndtype f32\nlayout spatial\n\n");
    CHECK_THROWS_AS(read_ndf(dir / "dtype.ndf"), IoError);

    // 4x4 c128 promises 256 bytes; provide 15 values = 240
    std::string truncated = "NDF1\ndims 4 4\ndtype c128\nlayout standard\n\n";
    truncated.append(240, '\0');
    write_bytes(dir / "short.ndf", truncated);
    CHECK_THROWS_AS(read_ndf(dir / "short.ndf"), IoError);

    // trailing garbage after a complete payload
    std::string trailing = "NDF1\ndims 2\ndtype f64\nlayout spatial\n\n";
    trailing.append(16, '\0');
    trailing.append("x");
    write_bytes(dir / "long.ndf", trailing);
    CHECK_THROWS_AS(read_ndf(dir / "long.ndf"), IoError);

    // f64 payloads are spatial images, not spectra
    std::string mixed = "NDF1\ndims 2\ndtype f64\nlayout standard\n\n";
    mixed.append(16, '\0');
    write_bytes(dir / "mixed.ndf", mixed);
    CHECK_THROWS_AS(read_ndf(dir / "mixed.ndf"), IoError);

    // asking for the wrong variant is a consistency error
    write_ndf(RealImage({2}), dir / "real.ndf");
    CHECK_THROWS_AS(read_ndf_spectrum(dir / "real.ndf"), ConsistencyError);
    write_ndf(ComplexSpectrum({2}), dir / "spectrum.ndf");
    CHECK_THROWS_AS(read_ndf_image(dir / "spectrum.ndf"), ConsistencyError);
}

namespace {

PyramidManifest sample_manifest() {
    PyramidManifest manifest;
    manifest.wavelet = WaveletKind::Held;
    manifest.wavelet_params["held_order"] = 2;
    manifest.levels = 2;
    manifest.bands = 2;
    manifest.input_dims = {64, 64};
    manifest.entries = {{1, 1, "d11.ndf"},
                        {1, 2, "d12.ndf"},
                        {2, 1, "d21.ndf"},
                        {2, 2, "d22.ndf"}};
    manifest.approximation_path = "approx.ndf";
    return manifest;
}

}  // namespace

TEST_CASE("manifest round trip") {
    const fs::path path = scratch_dir() / "manifest.json";
    const PyramidManifest manifest = sample_manifest();
    write_manifest(manifest, path);

    const PyramidManifest back = read_manifest(path);
    CHECK(back.wavelet == WaveletKind::Held);
    CHECK(back.wavelet_params.at("held_order") == 2);
    CHECK(back.levels == 2);
    CHECK(back.bands == 2);
    CHECK(back.input_dims == Dims{64, 64});
    CHECK(back.scale_factor == 2);
    REQUIRE(back.entries.size() == 4);
    CHECK(back.entries[1].level == 1);
    CHECK(back.entries[1].band == 2);
    CHECK(back.entries[1].path == "d12.ndf");
    CHECK(back.approximation_path == "approx.ndf");
}

TEST_CASE("manifest validation") {
    PyramidManifest manifest = sample_manifest();
    manifest.validate();

    SUBCASE("entry count must be levels x bands") {
        manifest.entries.pop_back();
        CHECK_THROWS_AS(manifest.validate(), ConsistencyError);
    }
    SUBCASE("band out of range") {
        manifest.entries[0].band = 3;
        CHECK_THROWS_AS(manifest.validate(), ConsistencyError);
    }
    SUBCASE("duplicate entry") {
        manifest.entries[0] = manifest.entries[1];
        CHECK_THROWS_AS(manifest.validate(), ConsistencyError);
    }
    SUBCASE("scale factor is pinned") {
        manifest.scale_factor = 4;
        CHECK_THROWS_AS(manifest.validate(), ConsistencyError);
    }
}

TEST_CASE("manifest rejects unknown wavelet naming the supported kinds") {
    const fs::path path = scratch_dir() / "meyer.json";
    write_bytes(path, R"({
  "wavelet": "meyer",
  "wavelet_params": {},
  "levels": 1,
  "bands": 1,
  "input_dims": [8, 8],
  "scale_factor": 2,
  "entries": [{"level": 1, "band": 1, "path": "d.ndf"}],
  "approximation": "a.ndf"
})");
    try {
        read_manifest(path);
        FAIL("expected ConsistencyError");
    } catch (const ConsistencyError& e) {
        const std::string what = e.what();
        CHECK(what.find("meyer") != std::string::npos);
        CHECK(what.find("vow") != std::string::npos);
        CHECK(what.find("held") != std::string::npos);
        CHECK(what.find("simoncelli") != std::string::npos);
        CHECK(what.find("shannon") != std::string::npos);
    }
}

TEST_CASE("manifest with malformed json is an io error") {
    const fs::path path = scratch_dir() / "broken.json";
    write_bytes(path, "{ not json");
    CHECK_THROWS_AS(read_manifest(path), IoError);
}
