#pragma once

#include <vector>

#include "isowave/image.hpp"
#include "isowave/wavelets.hpp"

namespace isowave {

/// Frequency-domain detail coefficients per (level, band) plus the residual
/// approximation. Detail (s, h) lives on the level-s grid dims / 2^(s-1);
/// the approximation on dims / 2^levels.
struct PyramidCoefficients {
    Dims input_dims;
    int levels = 0;
    int bands = 0;
    WaveletFunction wavelet;
    std::vector<std::vector<ComplexSpectrum>> details;  // [level-1][band-1]
    ComplexSpectrum approximation;
    std::vector<FilterBank> banks;  // per-level cache; may be empty

    ComplexSpectrum& detail(int level, int band);
    const ComplexSpectrum& detail(int level, int band) const;
};

// Largest L such that every axis is divisible by 2^L with quotient >= 2;
// 0 when any axis is odd.
int max_levels(const Dims& dims);

// Analysis: per level, details = current * HP_band, then
// current = shrink(current * LP). Input must be Standard layout; a
// non-hermitian input only triggers a warning on stderr.
PyramidCoefficients forward_pyramid(const ComplexSpectrum& spectrum, int levels,
                                    int bands, const WaveletFunction& wavelet);

// Synthesis: walk levels top down, current = expand(current) * LP + sum of
// detail * HP_band. Regenerates filter banks when the cache is empty; both
// paths produce identical results.
ComplexSpectrum inverse_pyramid(const PyramidCoefficients& coefficients,
                                bool use_cached_banks = true);

}  // namespace isowave
