#pragma once

// Reference transform for oracle tests: plain per-axis O(N^2) sums, nothing
// shared with the library's DFT path.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "isowave/image.hpp"

namespace oracle {

inline isowave::ComplexSpectrum naive_dft(const isowave::RealImage& image) {
    using isowave::ComplexSpectrum;
    ComplexSpectrum current(image.dims);
    for (std::size_t i = 0; i < image.size(); ++i) current.data[i] = image.data[i];

    for (std::size_t axis = 0; axis < image.dims.size(); ++axis) {
        ComplexSpectrum next(image.dims);
        const std::size_t n = image.dims[axis];
        for (std::size_t out = 0; out < next.size(); ++out) {
            auto coords = isowave::coords_of(image.dims, out);
            const std::size_t k = coords[axis];
            std::complex<double> acc = 0.0;
            for (std::size_t s = 0; s < n; ++s) {
                coords[axis] = s;
                const double angle = -2.0 * std::numbers::pi *
                                     static_cast<double>(k * s % n) /
                                     static_cast<double>(n);
                acc += current.data[isowave::flat_index(image.dims, coords)] *
                       std::complex<double>(std::cos(angle), std::sin(angle));
            }
            next.data[out] = acc;
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace oracle
