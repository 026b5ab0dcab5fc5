#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "isowave/frequency.hpp"
#include "isowave/pyramid.hpp"
#include "isowave/wavelets.hpp"

using namespace isowave;
using std::numbers::pi;

namespace {

RealImage random_image(const Dims& dims, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    RealImage image(dims);
    for (double& v : image.data) v = value(rng);
    return image;
}

double spectral_energy(const ComplexSpectrum& spectrum) {
    double sum = 0.0;
    for (const auto& v : spectrum.data) sum += std::norm(v);
    return sum;
}

double pyramid_energy(const PyramidCoefficients& coeffs) {
    double sum = spectral_energy(coeffs.approximation);
    for (const auto& level : coeffs.details)
        for (const auto& band : level) sum += spectral_energy(band);
    return sum;
}

double max_abs_diff(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    REQUIRE(a.dims == b.dims);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
    return worst;
}

RealImage axis_cosine(const Dims& dims, std::size_t k0) {
    RealImage image(dims);
    for (std::size_t i = 0; i < image.size(); ++i) {
        const auto coords = coords_of(dims, i);
        image.data[i] = std::cos(2.0 * pi * k0 * coords[0] / dims[0]);
    }
    return image;
}

}  // namespace

TEST_CASE("max levels rule") {
    CHECK(max_levels({512, 512}) == 8);
    CHECK(max_levels({512}) == 8);
    CHECK(max_levels({64}) == 5);
    CHECK(max_levels({64, 32}) == 4);
    CHECK(max_levels({7}) == 0);
    CHECK(max_levels({64, 7}) == 0);
    CHECK(max_levels({2}) == 0);  // quotient would drop below 2
    CHECK(max_levels({4}) == 1);
}

TEST_CASE("forward pyramid splits energy by band position") {
    const auto shannon = make_wavelet(WaveletKind::Shannon);

    SUBCASE("low-frequency cosine lands in the approximation") {
        // w = pi/8 along axis 0 on a 16-wide grid: bin 1
        const auto coeffs =
            forward_pyramid(forward_dft(axis_cosine({16, 16}, 1)), 1, 1, shannon);
        CHECK(spectral_energy(coeffs.detail(1, 1)) < 1e-20);
        CHECK(spectral_energy(coeffs.approximation) > 1.0);
    }
    SUBCASE("high-frequency cosine lands in the detail") {
        // w = 3pi/4: bin 6 of 16
        const auto coeffs =
            forward_pyramid(forward_dft(axis_cosine({16, 16}, 6)), 1, 1, shannon);
        CHECK(spectral_energy(coeffs.approximation) < 1e-20);
        CHECK(spectral_energy(coeffs.detail(1, 1)) > 1.0);
    }
    SUBCASE("zero input gives zero coefficients") {
        const auto coeffs =
            forward_pyramid(ComplexSpectrum({8, 8}), 2, 2, shannon);
        CHECK(pyramid_energy(coeffs) == 0.0);
    }
}

TEST_CASE("coefficient shapes follow the dyadic ladder") {
    const auto wavelet = make_wavelet(WaveletKind::Simoncelli);
    const auto coeffs =
        forward_pyramid(forward_dft(random_image({32, 16}, 3)), 3, 2, wavelet);
    CHECK(coeffs.detail(1, 1).dims == Dims{32, 16});
    CHECK(coeffs.detail(2, 2).dims == Dims{16, 8});
    CHECK(coeffs.detail(3, 1).dims == Dims{8, 4});
    CHECK(coeffs.approximation.dims == Dims{4, 2});
    CHECK(coeffs.banks.size() == 3);
}

TEST_CASE("forward pyramid preconditions") {
    const auto wavelet = make_wavelet(WaveletKind::Vow);
    const ComplexSpectrum spectrum = forward_dft(random_image({16, 16}, 5));

    CHECK_THROWS_AS(forward_pyramid(spectrum, 0, 1, wavelet), std::invalid_argument);
    CHECK_THROWS_AS(forward_pyramid(spectrum, 4, 1, wavelet), std::invalid_argument);
    CHECK_THROWS_AS(forward_pyramid(spectrum, 1, 0, wavelet), std::invalid_argument);

    ComplexSpectrum shifted = shift_layout(spectrum);
    CHECK_THROWS_AS(forward_pyramid(shifted, 1, 1, wavelet), std::invalid_argument);

    SUBCASE("non-hermitian input only warns") {
        ComplexSpectrum skew({16, 16});
        skew.data[3] = {0.0, 1.0};
        std::ostringstream captured;
        auto* old = std::cerr.rdbuf(captured.rdbuf());
        const auto coeffs = forward_pyramid(skew, 1, 1, wavelet);
        std::cerr.rdbuf(old);
        CHECK(captured.str().find("hermitian") != std::string::npos);
        CHECK(coeffs.levels == 1);
    }
}

TEST_CASE("inverse pyramid reconstructs the spectrum") {
    std::mt19937 seed_gen(101);
    for (const auto kind : {WaveletKind::Vow, WaveletKind::Held,
                            WaveletKind::Simoncelli, WaveletKind::Shannon}) {
        const auto wavelet = make_wavelet(kind);
        const ComplexSpectrum spectrum = forward_dft(random_image({32, 32}, seed_gen()));
        const double peak = std::sqrt(spectral_energy(spectrum));
        for (const int levels : {1, 3}) {
            for (const int bands : {1, 2}) {
                INFO(to_string(kind), " levels ", levels, " bands ", bands);
                const auto coeffs = forward_pyramid(spectrum, levels, bands, wavelet);
                const ComplexSpectrum back = inverse_pyramid(coeffs);
                CHECK(max_abs_diff(back, spectrum) < 1e-10 * peak);
            }
        }
    }

    SUBCASE("3d round trip") {
        const ComplexSpectrum spectrum = forward_dft(random_image({16, 16, 16}, 7));
        const auto wavelet = make_wavelet(WaveletKind::Held);
        const auto coeffs = forward_pyramid(spectrum, 2, 2, wavelet);
        const ComplexSpectrum back = inverse_pyramid(coeffs);
        CHECK(max_abs_diff(back, spectrum) <
              1e-10 * std::sqrt(spectral_energy(spectrum)));
    }

    SUBCASE("zero coefficients give zero output") {
        auto coeffs = forward_pyramid(ComplexSpectrum({8, 8}), 2, 1,
                                      make_wavelet(WaveletKind::Shannon));
        CHECK(spectral_energy(inverse_pyramid(coeffs)) == 0.0);
    }
}

TEST_CASE("spectral energy is conserved") {
    const ComplexSpectrum spectrum = forward_dft(random_image({32, 32}, 11));
    const double input_energy = spectral_energy(spectrum);
    for (const auto kind : {WaveletKind::Vow, WaveletKind::Shannon}) {
        for (const int bands : {1, 5}) {
            const auto coeffs =
                forward_pyramid(spectrum, 2, bands, make_wavelet(kind));
            CHECK(pyramid_energy(coeffs) ==
                  doctest::Approx(input_energy).epsilon(1e-9));
        }
    }
}

TEST_CASE("forward pyramid is linear") {
    const auto wavelet = make_wavelet(WaveletKind::Simoncelli);
    const ComplexSpectrum x = forward_dft(random_image({16, 16}, 13));
    const ComplexSpectrum y = forward_dft(random_image({16, 16}, 17));
    const double a = 2.25, b = -0.5;

    ComplexSpectrum mix({16, 16});
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix.data[i] = a * x.data[i] + b * y.data[i];

    const auto cx = forward_pyramid(x, 2, 2, wavelet);
    const auto cy = forward_pyramid(y, 2, 2, wavelet);
    const auto cmix = forward_pyramid(mix, 2, 2, wavelet);

    for (int s = 1; s <= 2; ++s) {
        for (int h = 1; h <= 2; ++h) {
            const auto& dx = cx.detail(s, h);
            const auto& dy = cy.detail(s, h);
            const auto& dm = cmix.detail(s, h);
            double worst = 0.0;
            for (std::size_t i = 0; i < dm.size(); ++i)
                worst = std::max(worst,
                                 std::abs(dm.data[i] - (a * dx.data[i] + b * dy.data[i])));
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("cached and regenerated banks agree") {
    const auto wavelet = make_wavelet(WaveletKind::Held, 0.75, 2);
    const ComplexSpectrum spectrum = forward_dft(random_image({32, 32}, 19));
    auto coeffs = forward_pyramid(spectrum, 3, 2, wavelet);

    const ComplexSpectrum cached = inverse_pyramid(coeffs, true);
    coeffs.banks.clear();
    const ComplexSpectrum regenerated = inverse_pyramid(coeffs, true);
    CHECK(max_abs_diff(cached, regenerated) < 1e-12);
}

TEST_CASE("inverse pyramid validates coefficient dims") {
    auto coeffs = forward_pyramid(forward_dft(random_image({16, 16}, 23)), 2, 1,
                                  make_wavelet(WaveletKind::Vow));
    coeffs.approximation = ComplexSpectrum({8, 8});  // should be 4x4
    CHECK_THROWS_AS(inverse_pyramid(coeffs), std::invalid_argument);
}

TEST_CASE("spatial round trip through the full chain") {
    const RealImage image = random_image({24, 40}, 29);  // forces padding
    const RealImage padded = pad_to_levels(image, 2);
    const auto wavelet = make_wavelet(WaveletKind::Simoncelli);

    const auto coeffs = forward_pyramid(forward_dft(padded), 2, 2, wavelet);
    const RealImage back = inverse_dft(inverse_pyramid(coeffs)).image;

    double range = 0.0;
    for (double v : image.data) range = std::max(range, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < padded.size(); ++i)
        worst = std::max(worst, std::abs(back.data[i] - padded.data[i]));
    CHECK(worst < 1e-9 * 2 * range);
}
