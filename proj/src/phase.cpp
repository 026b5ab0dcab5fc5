#include "isowave/phase.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "isowave/frequency.hpp"
#include "isowave/parallel.hpp"
#include "isowave/pyramid.hpp"
#include "isowave/riesz.hpp"

namespace isowave {

MonogenicSignal monogenic(const ComplexSpectrum& spectrum) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("monogenic expects a standard-layout spectrum");

    MonogenicSignal signal;
    InverseDftResult scalar = inverse_dft(spectrum);
    signal.scalar = std::move(scalar.image);
    signal.max_imag_residual = scalar.max_imag_residual;

    const Dims& dims = spectrum.dims;
    const std::size_t d = dims.size();
    const auto bank = generate_riesz_bank(1, dims);
    signal.riesz.reserve(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        ComplexSpectrum filtered(dims);
        parallel_for(spectrum.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const auto coords = coords_of(dims, i);
                // The response at a Nyquist bin is purely imaginary and maps
                // to itself under reflection, so keep it out of the product:
                // this is what makes real inputs come back exactly real.
                const bool self_paired =
                    dims[axis] % 2 == 0 && coords[axis] == dims[axis] / 2;
                filtered.data[i] = self_paired
                                       ? std::complex<double>{0.0, 0.0}
                                       : spectrum.data[i] *
                                             bank.components[axis].data[i];
            }
        });
        InverseDftResult component = inverse_dft(filtered);
        signal.max_imag_residual =
            std::max(signal.max_imag_residual, component.max_imag_residual);
        signal.riesz.push_back(std::move(component.image));
    }
    return signal;
}

PhaseAmplitude phase_amplitude(const MonogenicSignal& signal) {
    signal.scalar.validate();
    for (const auto& r : signal.riesz)
        if (r.dims != signal.scalar.dims)
            throw std::invalid_argument("phase_amplitude: component dims mismatch");

    PhaseAmplitude out{RealImage(signal.scalar.dims), RealImage(signal.scalar.dims)};
    const std::size_t total = signal.scalar.size();
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double riesz_sq = 0.0;
            for (const auto& r : signal.riesz) riesz_sq += r.data[i] * r.data[i];
            const double f = signal.scalar.data[i];
            const double riesz_norm = std::sqrt(riesz_sq);
            out.amplitude.data[i] = std::sqrt(f * f + riesz_sq);
            out.phase.data[i] = std::atan2(riesz_norm, f);
        }
    });
    return out;
}

RealImage soft_threshold_phase(const RealImage& amplitude, const RealImage& phase,
                               double k_sigmas) {
    amplitude.validate();
    if (phase.dims != amplitude.dims)
        throw std::invalid_argument("soft_threshold_phase: dims mismatch");

    const std::size_t total = amplitude.size();
    double mean = 0.0;
    for (double a : amplitude.data) mean += a;
    mean /= static_cast<double>(total);
    double var = 0.0;
    for (double a : amplitude.data) var += (a - mean) * (a - mean);
    var /= static_cast<double>(total);
    const double threshold = mean + k_sigmas * std::sqrt(var);

    RealImage out(amplitude.dims);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double a = amplitude.data[i];
            double w;
            if (a <= 0.0)
                w = 0.0;  // no amplitude, no phase to report
            else if (threshold <= 0.0)
                w = 1.0;
            else
                w = std::min(1.0, a / threshold);
            out.data[i] = w * std::cos(phase.data[i]);
        }
    });
    return out;
}

RealImage riesz_wavelet_phase_pipeline(const RealImage& image,
                                       const WaveletFunction& wavelet, int levels,
                                       int bands, double k_sigmas,
                                       const PhasePipelineOptions& options) {
    image.validate();
    if (levels < 1) throw std::invalid_argument("phase pipeline: levels must be >= 1");
    if (bands < 1) throw std::invalid_argument("phase pipeline: bands must be >= 1");

    const RealImage padded = pad_to_levels(image, levels);
    PyramidCoefficients coeffs =
        forward_pyramid(forward_dft(padded), levels, bands, wavelet);

    if (options.analyze_bands || options.band_sink) {
        for (int s = 1; s <= levels; ++s) {
            for (int h = 1; h <= bands; ++h) {
                ComplexSpectrum& detail = coeffs.detail(s, h);
                const MonogenicSignal signal = monogenic(detail);
                const PhaseAmplitude pa = phase_amplitude(signal);
                const RealImage band =
                    soft_threshold_phase(pa.amplitude, pa.phase, k_sigmas);
                if (options.band_sink) options.band_sink(s, h, band);
                if (options.analyze_bands) detail = forward_dft(band);
            }
        }
    }
    // The approximation band passes through untouched.

    const ComplexSpectrum recomposed = inverse_pyramid(coeffs);
    RealImage full = inverse_dft(recomposed).image;
    if (full.dims == image.dims) return full;

    RealImage out(image.dims);
    out.spacing = image.spacing;
    out.origin = image.origin;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data[i] = full.data[flat_index(full.dims, coords_of(image.dims, i))];
    return out;
}

double EigenField::eigenvalue(std::size_t sample, int rank) const {
    const auto n = static_cast<std::size_t>(n_inputs);
    if (rank < 1 || static_cast<std::size_t>(rank) > n)
        throw std::invalid_argument("eigenvalue: rank out of range");
    return data[sample * n * (n + 1) + (static_cast<std::size_t>(rank) - 1) * (n + 1) + n];
}

std::vector<double> EigenField::eigenvector(std::size_t sample, int rank) const {
    const auto n = static_cast<std::size_t>(n_inputs);
    if (rank < 1 || static_cast<std::size_t>(rank) > n)
        throw std::invalid_argument("eigenvector: rank out of range");
    std::vector<double> v(n);
    const std::size_t base = sample * n * (n + 1);
    for (std::size_t row = 0; row < n; ++row)
        v[row] = data[base + row * (n + 1) + static_cast<std::size_t>(rank - 1)];
    return v;
}

EigenField structure_tensor(const std::vector<RealImage>& inputs, double sigma,
                            int radius) {
    if (inputs.size() < 2)
        throw std::invalid_argument("structure_tensor: need at least 2 inputs");
    if (!(sigma > 0.0)) throw std::invalid_argument("structure_tensor: sigma must be > 0");
    if (radius < 1) throw std::invalid_argument("structure_tensor: radius must be >= 1");
    for (const auto& input : inputs) {
        input.validate();
        if (input.dims != inputs[0].dims)
            throw std::invalid_argument("structure_tensor: input dims mismatch");
    }

    const Dims& dims = inputs[0].dims;
    const std::size_t d = dims.size();
    const std::size_t n = inputs.size();
    const std::size_t total = total_size(dims);

    // Normalized truncated Gaussian over the (2r+1)^d window.
    const std::size_t window_len = static_cast<std::size_t>(2 * radius + 1);
    std::size_t window_total = 1;
    for (std::size_t a = 0; a < d; ++a) window_total *= window_len;
    std::vector<double> weights(window_total);
    Dims window_dims(d, window_len);
    double weight_sum = 0.0;
    for (std::size_t wi = 0; wi < window_total; ++wi) {
        const auto wc = coords_of(window_dims, wi);
        double dist_sq = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            const double off = static_cast<double>(wc[a]) - radius;
            dist_sq += off * off;
        }
        weights[wi] = std::exp(-dist_sq / (2.0 * sigma * sigma));
        weight_sum += weights[wi];
    }
    for (double& w : weights) w /= weight_sum;

    EigenField field;
    field.dims = dims;
    field.n_inputs = static_cast<int>(n);
    field.data.assign(total * n * (n + 1), 0.0);

    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        Eigen::MatrixXd tensor(n, n);
        std::vector<std::size_t> sample_coords, neighbor(d);
        for (std::size_t idx = begin; idx < end; ++idx) {
            sample_coords = coords_of(dims, idx);
            tensor.setZero();
            for (std::size_t wi = 0; wi < window_total; ++wi) {
                const auto wc = coords_of(window_dims, wi);
                for (std::size_t a = 0; a < d; ++a) {
                    const long pos = static_cast<long>(sample_coords[a]) +
                                     static_cast<long>(wc[a]) - radius;
                    const long clamped =
                        std::max(0L, std::min(pos, static_cast<long>(dims[a]) - 1));
                    neighbor[a] = static_cast<std::size_t>(clamped);
                }
                const std::size_t nidx = flat_index(dims, neighbor);
                for (std::size_t row = 0; row < n; ++row)
                    for (std::size_t col = row; col < n; ++col)
                        tensor(static_cast<Eigen::Index>(row),
                               static_cast<Eigen::Index>(col)) +=
                            weights[wi] * inputs[row].data[nidx] * inputs[col].data[nidx];
            }
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t col = 0; col < row; ++col)
                    tensor(static_cast<Eigen::Index>(row),
                           static_cast<Eigen::Index>(col)) =
                        tensor(static_cast<Eigen::Index>(col),
                               static_cast<Eigen::Index>(row));

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tensor);
            const auto& values = solver.eigenvalues();    // ascending
            const auto& vectors = solver.eigenvectors();  // columns match

            const std::size_t base = idx * n * (n + 1);
            for (std::size_t col = 0; col < n; ++col) {
                // Deterministic sign: largest-magnitude entry positive.
                Eigen::Index peak_row = 0;
                double peak = 0.0;
                for (std::size_t row = 0; row < n; ++row) {
                    const double v =
                        std::abs(vectors(static_cast<Eigen::Index>(row),
                                         static_cast<Eigen::Index>(col)));
                    if (v > peak) {
                        peak = v;
                        peak_row = static_cast<Eigen::Index>(row);
                    }
                }
                const double sign =
                    vectors(peak_row, static_cast<Eigen::Index>(col)) < 0.0 ? -1.0 : 1.0;
                for (std::size_t row = 0; row < n; ++row)
                    field.data[base + row * (n + 1) + col] =
                        sign * vectors(static_cast<Eigen::Index>(row),
                                       static_cast<Eigen::Index>(col));
            }
            for (std::size_t row = 0; row < n; ++row)
                field.data[base + row * (n + 1) + n] =
                    values[static_cast<Eigen::Index>(row)];
        }
    });
    return field;
}

RealImage coherency(const EigenField& field) {
    const auto n = static_cast<std::size_t>(field.n_inputs);
    RealImage out(field.dims);
    const std::size_t total = out.size();
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double rest = 0.0;
            for (int rank = 1; rank < static_cast<int>(n); ++rank)
                rest += std::max(0.0, field.eigenvalue(i, rank));
            rest /= static_cast<double>(n - 1);
            const double top = std::max(0.0, field.eigenvalue(i, static_cast<int>(n)));
            const double denom = top + rest;
            out.data[i] = denom > 0.0 ? (top - rest) / denom : 0.0;
        }
    });
    return out;
}

RealImage projection_image(const EigenField& field, const std::vector<RealImage>& inputs,
                           int eigen_rank) {
    const auto n = static_cast<std::size_t>(field.n_inputs);
    if (inputs.size() != n)
        throw std::invalid_argument("projection_image: input count mismatch");
    if (eigen_rank < 1 || static_cast<std::size_t>(eigen_rank) > n)
        throw std::invalid_argument("projection_image: eigen_rank out of range");
    for (const auto& input : inputs)
        if (input.dims != field.dims)
            throw std::invalid_argument("projection_image: dims mismatch");

    RealImage out(field.dims);
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto v = field.eigenvector(i, eigen_rank);
            double acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += v[c] * inputs[c].data[i];
            out.data[i] = acc;
        }
    });
    return out;
}

}  // namespace isowave
