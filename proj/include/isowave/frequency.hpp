#pragma once

#include "isowave/image.hpp"

namespace isowave {

// Angular frequency of one bin index along one axis of length n, Standard
// layout: 2*pi*k/n for k <= floor(n/2), else 2*pi*(k-n)/n. Range (-pi, pi].
double bin_frequency_standard(std::size_t n, std::size_t k);

// Per-axis angular frequency vector of a bin. Standard and Shifted layouts
// derive frequencies from the index alone; Physical uses origin + k * spacing.
std::vector<double> bin_to_frequency(FrequencyLayout layout, const Dims& dims,
                                     const std::vector<std::size_t>& bin);
std::vector<double> bin_to_frequency(FrequencyLayout layout, const Dims& dims,
                                     const std::vector<std::size_t>& bin,
                                     const std::vector<double>& origin,
                                     const std::vector<double>& spacing);
std::vector<double> bin_to_frequency(const ComplexSpectrum& spectrum,
                                     const std::vector<std::size_t>& bin);

// Euclidean norm ||w||.
double radial_frequency(const std::vector<double>& freq);

// fftshift: rotate each axis so DC lands at floor(N/2). unshift undoes it
// exactly, for even and odd sizes alike.
ComplexSpectrum shift_layout(const ComplexSpectrum& spectrum);
ComplexSpectrum unshift_layout(const ComplexSpectrum& spectrum);

// Unnormalized forward transform: X[k] = sum_n x[n] exp(-2*pi*j k.n/N).
ComplexSpectrum forward_dft(const RealImage& image);
ComplexSpectrum forward_dft(const ComplexSpectrum& spatial);

struct InverseDftResult {
    RealImage image;
    double max_imag_residual = 0.0;  // largest |Im| discarded, caller decides
};

// Divides by the total sample count; requires Standard layout.
InverseDftResult inverse_dft(const ComplexSpectrum& spectrum);

// True iff |X[k] - conj(X[(N-k) mod N])| <= tol * max|X| for every bin.
// The reflection is taken in stored index space (Standard layout semantics).
bool is_hermitian(const ComplexSpectrum& spectrum, double tol);

// Halve every axis, keeping the low-frequency half. For an even result size M
// the new Nyquist bin folds: new[M/2] = old[M/2] + old[3M/2]. Gain 1.
ComplexSpectrum shrink_spectrum(const ComplexSpectrum& spectrum);

// Double every axis, zero-filling the new high band. An even input size M
// splits its Nyquist bin half and half between new bins M/2 and 3M/2, so
// shrink_spectrum(expand_spectrum(X)) == X for every X.
ComplexSpectrum expand_spectrum(const ComplexSpectrum& spectrum);

// Per-axis target sizes of pad_to_levels: the smallest size >= n that is
// divisible by 2^levels with a quotient of at least 2.
Dims padded_dims(const Dims& dims, int levels);

// Zero-pad each axis at the high-index end up to padded_dims.
RealImage pad_to_levels(const RealImage& image, int levels);

}  // namespace isowave
