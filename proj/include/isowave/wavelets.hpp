#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isowave/image.hpp"

namespace isowave {

enum class WaveletKind { Vow, Held, Simoncelli, Shannon };

std::string to_string(WaveletKind kind);
WaveletKind wavelet_from_string(const std::string& name);

// The transition polynomial of the Held profile: the unique polynomial of
// degree 2n+1 with q(1/8) = 1/4, q(1/4) = 0 and derivatives 1..n vanishing at
// both points. Stored as integer coefficients of the equivalent Hermite
// smoothstep B_n in s = 8t - 1, evaluated as q(t) = (1 - B_n(s)) / 4, which
// keeps both endpoint conditions exact in double precision.
struct HeldPolynomial {
    int order = 0;
    std::vector<double> smoothstep_coeffs;  // B_n(s) = sum_k c[k] s^k

    double operator()(double t) const;
};

// Supported orders are 0..5.
HeldPolynomial held_polynomial(int order);

/// A radial mother wavelet profile h(w), band-limited to w <= pi.
struct WaveletFunction {
    WaveletKind kind = WaveletKind::Simoncelli;
    double kappa = 0.75;  // Vow steepness parameter
    int held_order = 0;
    HeldPolynomial held_poly;
};

WaveletFunction make_wavelet(WaveletKind kind, double kappa = 0.75, int held_order = 0);

// h(w) for w >= 0; exactly 0 outside the support (pi/4, pi].
double eval_mother(const WaveletFunction& wavelet, double w);

// Low-pass residual after all detail scales: LP(w) = sqrt(sum_{i>=1} h(2^i w)^2),
// with LP(0) = 1. Vanishes for ||w|| >= pi/2.
double eval_level_lowpass(const WaveletFunction& wavelet, double w);

// Splits the high-pass residual HP^2 = 1 - LP^2 across `bands` sub-bands via
// normalized fractional-dilation weights; band 1 is the lowest frequency.
// Returns `bands` values with sum of squares equal to HP^2.
std::vector<double> eval_subbands(const WaveletFunction& wavelet, int bands, double w);

/// Sampled level filters on a concrete grid: one low-pass plus `bands`
/// sub-band high-pass spectra, all real-valued, Standard layout.
struct FilterBank {
    Dims dims;
    int bands = 1;
    ComplexSpectrum low_pass;
    std::vector<ComplexSpectrum> sub_bands;
};

FilterBank generate_filter_bank(const WaveletFunction& wavelet, const Dims& dims,
                                int bands);

/// Radial profile table for inspection/plotting.
struct ProfileTable {
    std::vector<double> omega;
    std::vector<double> mother;                 // h(w)
    std::vector<std::vector<double>> subbands;  // per band
    std::vector<double> lowpass;                // LP(w)
};

// Uniform sweep of [0, 1.05*pi] with n_samples rows.
ProfileTable emit_profile(const WaveletFunction& wavelet, int bands, int n_samples);

// CSV rows "omega,h,h_1,...,h_B,lp" at six significant digits.
void write_profile_csv(const ProfileTable& table, std::ostream& out);

}  // namespace isowave
