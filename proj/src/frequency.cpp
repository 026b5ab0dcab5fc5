#include "isowave/frequency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "isowave/parallel.hpp"

namespace isowave {

namespace {

// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<int> dims_as_int(const Dims& dims) {
    std::vector<int> n(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] > static_cast<std::size_t>(std::numeric_limits<int>::max()))
            throw std::invalid_argument("axis too large for transform");
        n[i] = static_cast<int>(dims[i]);
    }
    return n;
}

std::vector<std::complex<double>> run_dft(const Dims& dims,
                                          const std::vector<std::complex<double>>& input,
                                          int sign) {
    auto n = dims_as_int(dims);
    std::vector<std::complex<double>> in(input);
    std::vector<std::complex<double>> out(input.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(),
                             reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()), sign,
                             FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (!plan) throw std::runtime_error("transform planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

// Applies a per-axis index remap plus the fold/split adjustments shared by
// shrink and expand. `axis_map` receives (old axis size, new axis size).
using AxisRemap = std::vector<std::pair<std::size_t, std::vector<std::size_t>>>;

}  // namespace

double bin_frequency_standard(std::size_t n, std::size_t k) {
    if (k >= n) throw std::invalid_argument("bin index out of range");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    if (k <= n / 2) return step * static_cast<double>(k);
    return step * (static_cast<double>(k) - static_cast<double>(n));
}

std::vector<double> bin_to_frequency(FrequencyLayout layout, const Dims& dims,
                                     const std::vector<std::size_t>& bin) {
    if (layout == FrequencyLayout::Physical)
        throw std::invalid_argument("physical layout needs origin and spacing");
    if (bin.size() != dims.size())
        throw std::invalid_argument("bin_to_frequency: rank mismatch");
    std::vector<double> freq(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::size_t k = bin[i];
        if (k >= dims[i]) throw std::invalid_argument("bin index out of range");
        if (layout == FrequencyLayout::Shifted) {
            // Shifted bin k holds the Standard bin (k + ceil(N/2)) mod N.
            k = (k + dims[i] - dims[i] / 2) % dims[i];
        }
        freq[i] = bin_frequency_standard(dims[i], k);
    }
    return freq;
}

std::vector<double> bin_to_frequency(FrequencyLayout layout, const Dims& dims,
                                     const std::vector<std::size_t>& bin,
                                     const std::vector<double>& origin,
                                     const std::vector<double>& spacing) {
    if (layout != FrequencyLayout::Physical) return bin_to_frequency(layout, dims, bin);
    if (bin.size() != dims.size() || origin.size() != dims.size() ||
        spacing.size() != dims.size())
        throw std::invalid_argument("bin_to_frequency: rank mismatch");
    std::vector<double> freq(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (bin[i] >= dims[i]) throw std::invalid_argument("bin index out of range");
        freq[i] = origin[i] + spacing[i] * static_cast<double>(bin[i]);
    }
    return freq;
}

std::vector<double> bin_to_frequency(const ComplexSpectrum& spectrum,
                                     const std::vector<std::size_t>& bin) {
    return bin_to_frequency(spectrum.layout, spectrum.dims, bin,
                            spectrum.frequency_origin, spectrum.frequency_spacing);
}

double radial_frequency(const std::vector<double>& freq) {
    double sum = 0.0;
    for (double w : freq) sum += w * w;
    return std::sqrt(sum);
}

namespace {

ComplexSpectrum permute_axes(const ComplexSpectrum& spectrum, bool forward_shift) {
    ComplexSpectrum out(spectrum.dims, forward_shift ? FrequencyLayout::Shifted
                                                     : FrequencyLayout::Standard);
    out.frequency_spacing = spectrum.frequency_spacing;
    out.frequency_origin = spectrum.frequency_origin;
    const Dims& dims = spectrum.dims;
    const std::size_t total = spectrum.size();
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            auto coords = coords_of(dims, idx);
            // fftshift moves bin k to (k + floor(N/2)) mod N; ifftshift undoes it.
            for (std::size_t a = 0; a < dims.size(); ++a) {
                std::size_t half = dims[a] / 2;
                coords[a] = forward_shift ? (coords[a] + half) % dims[a]
                                          : (coords[a] + dims[a] - half) % dims[a];
            }
            out.data[flat_index(dims, coords)] = spectrum.data[idx];
        }
    });
    return out;
}

}  // namespace

ComplexSpectrum shift_layout(const ComplexSpectrum& spectrum) {
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("shift_layout expects a standard-layout spectrum");
    return permute_axes(spectrum, true);
}

ComplexSpectrum unshift_layout(const ComplexSpectrum& spectrum) {
    if (spectrum.layout != FrequencyLayout::Shifted)
        throw std::invalid_argument("unshift_layout expects a shifted-layout spectrum");
    return permute_axes(spectrum, false);
}

ComplexSpectrum forward_dft(const RealImage& image) {
    image.validate();
    std::vector<std::complex<double>> buffer(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) buffer[i] = image.data[i];
    ComplexSpectrum out(image.dims, run_dft(image.dims, buffer, FFTW_FORWARD));
    return out;
}

ComplexSpectrum forward_dft(const ComplexSpectrum& spatial) {
    spatial.validate();
    return ComplexSpectrum(spatial.dims, run_dft(spatial.dims, spatial.data, FFTW_FORWARD));
}

InverseDftResult inverse_dft(const ComplexSpectrum& spectrum) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("inverse_dft expects a standard-layout spectrum");
    auto back = run_dft(spectrum.dims, spectrum.data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(total_size(spectrum.dims));
    InverseDftResult result;
    result.image = RealImage(spectrum.dims);
    double residual = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
        result.image.data[i] = back[i].real() * scale;
        residual = std::max(residual, std::abs(back[i].imag()) * scale);
    }
    result.max_imag_residual = residual;
    return result;
}

bool is_hermitian(const ComplexSpectrum& spectrum, double tol) {
    spectrum.validate();
    double peak = 0.0;
    for (const auto& v : spectrum.data) peak = std::max(peak, std::abs(v));
    const Dims& dims = spectrum.dims;
    for (std::size_t idx = 0; idx < spectrum.size(); ++idx) {
        auto coords = coords_of(dims, idx);
        for (std::size_t a = 0; a < dims.size(); ++a)
            coords[a] = (dims[a] - coords[a]) % dims[a];
        const auto reflected = spectrum.data[flat_index(dims, coords)];
        if (std::abs(spectrum.data[idx] - std::conj(reflected)) > tol * peak)
            return false;
    }
    return true;
}

namespace {

// One axis of the shrink rule: which old bin feeds each new bin, plus the
// Nyquist fold partner when the new size is even.
void shrink_axis(std::size_t n, std::size_t index, std::size_t& src,
                 bool& fold, std::size_t& fold_src) {
    const std::size_t m = n / 2;
    fold = false;
    if (m % 2 == 0 ? index < m / 2 : index <= (m - 1) / 2) {
        src = index;
    } else if (m % 2 == 0 && index == m / 2) {
        src = index;  // old[M/2] ...
        fold = true;
        fold_src = index + m;  // ... plus old[3M/2]
    } else {
        src = index + m;
    }
}

}  // namespace

ComplexSpectrum shrink_spectrum(const ComplexSpectrum& spectrum) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("shrink_spectrum expects a standard-layout spectrum");
    ComplexSpectrum current = spectrum;
    for (std::size_t axis = 0; axis < spectrum.dims.size(); ++axis) {
        const Dims& od = current.dims;
        if (od[axis] % 2 != 0)
            throw std::invalid_argument("shrink_spectrum: axis size must be even");
        if (od[axis] / 2 == 0)
            throw std::invalid_argument("shrink_spectrum: axis too small");
        Dims nd = od;
        nd[axis] = od[axis] / 2;
        ComplexSpectrum next(nd);
        const std::size_t total = next.size();
        parallel_for(total, [&](std::size_t begin, std::size_t end) {
            for (std::size_t idx = begin; idx < end; ++idx) {
                auto coords = coords_of(nd, idx);
                std::size_t src, fold_src;
                bool fold;
                shrink_axis(od[axis], coords[axis], src, fold, fold_src);
                auto old_coords = coords;
                old_coords[axis] = src;
                std::complex<double> v = current.data[flat_index(od, old_coords)];
                if (fold) {
                    old_coords[axis] = fold_src;
                    v += current.data[flat_index(od, old_coords)];
                }
                next.data[idx] = v;
            }
        });
        current = std::move(next);
    }
    return current;
}

ComplexSpectrum expand_spectrum(const ComplexSpectrum& spectrum) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("expand_spectrum expects a standard-layout spectrum");
    ComplexSpectrum current = spectrum;
    for (std::size_t axis = 0; axis < spectrum.dims.size(); ++axis) {
        const Dims& od = current.dims;
        const std::size_t m = od[axis];
        Dims nd = od;
        nd[axis] = m * 2;
        ComplexSpectrum next(nd);
        const std::size_t total = next.size();
        parallel_for(total, [&](std::size_t begin, std::size_t end) {
            for (std::size_t idx = begin; idx < end; ++idx) {
                auto coords = coords_of(nd, idx);
                const std::size_t k = coords[axis];
                std::complex<double> v{0.0, 0.0};
                auto old_coords = coords;
                if (m % 2 == 0 && (k == m / 2 || k == m + m / 2)) {
                    old_coords[axis] = m / 2;
                    v = current.data[flat_index(od, old_coords)] * 0.5;
                } else if (m % 2 == 0 ? k < m / 2 : k <= (m - 1) / 2) {
                    old_coords[axis] = k;
                    v = current.data[flat_index(od, old_coords)];
                } else if (k > m + m / 2 || (m % 2 != 0 && k >= m + (m + 1) / 2)) {
                    old_coords[axis] = k - m;
                    v = current.data[flat_index(od, old_coords)];
                }
                next.data[idx] = v;
            }
        });
        current = std::move(next);
    }
    return current;
}

Dims padded_dims(const Dims& dims, int levels) {
    if (levels < 1) throw std::invalid_argument("padded_dims: levels must be >= 1");
    if (levels >= 63) throw std::invalid_argument("padded_dims: levels too large");
    const std::size_t divisor = std::size_t{1} << levels;
    Dims padded = dims;
    for (auto& n : padded) {
        std::size_t s = ((n + divisor - 1) / divisor) * divisor;
        if (s / divisor < 2) s = divisor * 2;
        n = s;
    }
    return padded;
}

RealImage pad_to_levels(const RealImage& image, int levels) {
    image.validate();
    const Dims padded = padded_dims(image.dims, levels);
    if (padded == image.dims) return image;
    RealImage out(padded);
    out.spacing = image.spacing;
    out.origin = image.origin;
    const std::size_t total = image.size();
    for (std::size_t idx = 0; idx < total; ++idx)
        out.data[flat_index(padded, coords_of(image.dims, idx))] = image.data[idx];
    return out;
}

}  // namespace isowave
