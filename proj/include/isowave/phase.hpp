#pragma once

#include <functional>
#include <vector>

#include "isowave/image.hpp"
#include "isowave/wavelets.hpp"

namespace isowave {

/// A band-passed image together with its d first-order Riesz components,
/// all spatial and real.
struct MonogenicSignal {
    RealImage scalar;
    std::vector<RealImage> riesz;
    // Largest imaginary magnitude discarded across all inverse transforms;
    // stays below 1e-10 for hermitian inputs.
    double max_imag_residual = 0.0;
};

// Builds the monogenic signal of a Standard-layout spectrum. The Riesz
// multipliers are zeroed on the Nyquist hyperplanes (k_i == N_i/2) so that
// hermitian inputs yield exactly real outputs.
MonogenicSignal monogenic(const ComplexSpectrum& spectrum);

struct PhaseAmplitude {
    RealImage amplitude;  // sqrt(f^2 + sum riesz^2)
    RealImage phase;      // atan2(|riesz|, f), in [0, pi]
};

PhaseAmplitude phase_amplitude(const MonogenicSignal& signal);

// T = mean(A) + k_sigmas * std(A); w = min(1, A/T); output w * cos(P).
// Samples with zero amplitude always get weight 0 (a flat zero band stays
// zero even though T collapses to 0 there). Output lies in [-1, 1].
RealImage soft_threshold_phase(const RealImage& amplitude, const RealImage& phase,
                               double k_sigmas);

struct PhasePipelineOptions {
    // When false, detail bands pass through untouched (useful to verify the
    // transport is lossless).
    bool analyze_bands = true;
    // Observer for each band's spatial phase image, keyed by (level, band).
    std::function<void(int, int, const RealImage&)> band_sink;
};

// Full analysis chain: pad, transform, split into an isotropic pyramid,
// replace each detail band by its soft-thresholded monogenic phase,
// reconstruct, crop back to the input size.
RealImage riesz_wavelet_phase_pipeline(const RealImage& image,
                                       const WaveletFunction& wavelet, int levels,
                                       int bands, double k_sigmas,
                                       const PhasePipelineOptions& options = {});

/// Per-sample eigensystem of the local structure tensor of N input images:
/// N unit eigenvectors (columns 0..N-1, ascending eigenvalue order) plus the
/// eigenvalues themselves (column N).
struct EigenField {
    Dims dims;
    int n_inputs = 0;
    std::vector<double> data;  // per sample: N*(N+1) doubles, row-major

    double eigenvalue(std::size_t sample, int rank) const;          // rank 1..N
    std::vector<double> eigenvector(std::size_t sample, int rank) const;
};

// J[m][n](x) = sum over a (2*radius+1)^d window of a normalized Gaussian of
// the products I_m I_n, clamp-to-edge boundaries, then one symmetric
// eigendecomposition per sample. Eigenvalues ascend; each eigenvector's
// largest-magnitude entry is made positive.
EigenField structure_tensor(const std::vector<RealImage>& inputs, double sigma,
                            int radius);

// (lambda_max - mean of the rest) / (lambda_max + mean of the rest), in [0,1];
// 0 where the tensor vanishes. Negative eigenvalues are clamped to 0 first.
RealImage coherency(const EigenField& field);

// Per-sample dot product between the rank-th eigenvector (1-based, ascending)
// and the input vector.
RealImage projection_image(const EigenField& field, const std::vector<RealImage>& inputs,
                           int eigen_rank);

}  // namespace isowave
