#include "isowave/image.hpp"

#include <numbers>
#include <stdexcept>

namespace isowave {

std::size_t total_size(const Dims& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

std::vector<std::size_t> row_major_strides(const Dims& dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;)
        strides[i - 1] = strides[i] * dims[i];
    return strides;
}

std::size_t flat_index(const Dims& dims, const std::vector<std::size_t>& coords) {
    if (coords.size() != dims.size())
        throw std::invalid_argument("flat_index: rank mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (coords[i] >= dims[i])
            throw std::invalid_argument("flat_index: coordinate out of range");
        idx = idx * dims[i] + coords[i];
    }
    return idx;
}

std::vector<std::size_t> coords_of(const Dims& dims, std::size_t flat) {
    std::vector<std::size_t> coords(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        coords[i] = flat % dims[i];
        flat /= dims[i];
    }
    return coords;
}

std::string to_string(FrequencyLayout layout) {
    switch (layout) {
        case FrequencyLayout::Standard: return "standard";
        case FrequencyLayout::Shifted: return "shifted";
        case FrequencyLayout::Physical: return "physical";
    }
    throw std::invalid_argument("unknown layout tag");
}

FrequencyLayout layout_from_string(const std::string& name) {
    if (name == "standard") return FrequencyLayout::Standard;
    if (name == "shifted") return FrequencyLayout::Shifted;
    if (name == "physical") return FrequencyLayout::Physical;
    throw std::invalid_argument("unknown layout \"" + name +
                                "\" (expected standard, shifted, or physical)");
}

RealImage::RealImage(Dims d)
    : dims(std::move(d)),
      data(total_size(dims), 0.0),
      spacing(dims.size(), 1.0),
      origin(dims.size(), 0.0) {
    validate();
}

RealImage::RealImage(Dims d, std::vector<double> values)
    : dims(std::move(d)),
      data(std::move(values)),
      spacing(dims.size(), 1.0),
      origin(dims.size(), 0.0) {
    validate();
}

double& RealImage::at(const std::vector<std::size_t>& coords) {
    return data[flat_index(dims, coords)];
}

double RealImage::at(const std::vector<std::size_t>& coords) const {
    return data[flat_index(dims, coords)];
}

void RealImage::validate() const {
    if (dims.empty()) throw std::invalid_argument("RealImage: empty dims");
    for (std::size_t d : dims)
        if (d == 0) throw std::invalid_argument("RealImage: zero-length axis");
    if (data.size() != total_size(dims))
        throw std::invalid_argument("RealImage: data size does not match dims");
    if (spacing.size() != dims.size() || origin.size() != dims.size())
        throw std::invalid_argument("RealImage: spacing/origin rank mismatch");
    for (double s : spacing)
        if (!(s > 0.0)) throw std::invalid_argument("RealImage: spacing must be positive");
}

ComplexSpectrum::ComplexSpectrum(Dims d, FrequencyLayout l)
    : ComplexSpectrum(std::move(d), {}, l) {
    data.assign(total_size(dims), {0.0, 0.0});
    validate();
}

ComplexSpectrum::ComplexSpectrum(Dims d, std::vector<std::complex<double>> values,
                                 FrequencyLayout l)
    : dims(std::move(d)), data(std::move(values)), layout(l) {
    frequency_spacing.resize(dims.size());
    frequency_origin.assign(dims.size(), 0.0);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] == 0) throw std::invalid_argument("ComplexSpectrum: zero-length axis");
        frequency_spacing[i] = 2.0 * std::numbers::pi / static_cast<double>(dims[i]);
    }
    if (!data.empty()) validate();
}

std::complex<double>& ComplexSpectrum::at(const std::vector<std::size_t>& coords) {
    return data[flat_index(dims, coords)];
}

std::complex<double> ComplexSpectrum::at(const std::vector<std::size_t>& coords) const {
    return data[flat_index(dims, coords)];
}

void ComplexSpectrum::validate() const {
    if (dims.empty()) throw std::invalid_argument("ComplexSpectrum: empty dims");
    if (data.size() != total_size(dims))
        throw std::invalid_argument("ComplexSpectrum: data size does not match dims");
    if (frequency_spacing.size() != dims.size() || frequency_origin.size() != dims.size())
        throw std::invalid_argument("ComplexSpectrum: frequency metadata rank mismatch");
}

}  // namespace isowave
