#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace isowave {

using Dims = std::vector<std::size_t>;

std::size_t total_size(const Dims& dims);

// Row-major strides; the last axis is contiguous.
std::vector<std::size_t> row_major_strides(const Dims& dims);

std::size_t flat_index(const Dims& dims, const std::vector<std::size_t>& coords);
std::vector<std::size_t> coords_of(const Dims& dims, std::size_t flat);

// Where the DC bin sits and how bins map to angular frequency.
//   Standard: DC at index 0, positive frequencies first (FFT order).
//   Shifted:  DC at floor(N/2) per axis (fftshift order).
//   Physical: frequencies are origin + index * spacing, no wrapping.
enum class FrequencyLayout { Standard, Shifted, Physical };

std::string to_string(FrequencyLayout layout);
FrequencyLayout layout_from_string(const std::string& name);

/// N-dimensional real-valued sample grid, row-major.
struct RealImage {
    Dims dims;
    std::vector<double> data;
    std::vector<double> spacing;  // per-axis sample spacing, > 0
    std::vector<double> origin;   // physical position of sample (0,...,0)

    RealImage() = default;
    explicit RealImage(Dims d);  // zero-filled, unit spacing, zero origin
    RealImage(Dims d, std::vector<double> values);

    double& at(const std::vector<std::size_t>& coords);
    double at(const std::vector<std::size_t>& coords) const;
    std::size_t size() const { return data.size(); }

    // Throws std::invalid_argument when dims/data/spacing/origin disagree.
    void validate() const;
};

/// Frequency-domain companion of RealImage: complex bins plus a layout tag.
struct ComplexSpectrum {
    Dims dims;
    std::vector<std::complex<double>> data;
    FrequencyLayout layout = FrequencyLayout::Standard;
    std::vector<double> frequency_spacing;  // 2*pi/N per axis for Standard
    std::vector<double> frequency_origin;   // all zero for Standard

    ComplexSpectrum() = default;
    explicit ComplexSpectrum(Dims d, FrequencyLayout l = FrequencyLayout::Standard);
    ComplexSpectrum(Dims d, std::vector<std::complex<double>> values,
                    FrequencyLayout l = FrequencyLayout::Standard);

    std::complex<double>& at(const std::vector<std::size_t>& coords);
    std::complex<double> at(const std::vector<std::size_t>& coords) const;
    std::size_t size() const { return data.size(); }

    void validate() const;
};

}  // namespace isowave
