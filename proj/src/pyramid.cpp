#include "isowave/pyramid.hpp"

#include <iostream>
#include <stdexcept>

#include "isowave/frequency.hpp"
#include "isowave/parallel.hpp"

namespace isowave {

namespace {

ComplexSpectrum pointwise_product(const ComplexSpectrum& spectrum,
                                  const ComplexSpectrum& filter) {
    if (spectrum.dims != filter.dims)
        throw std::invalid_argument("pointwise_product: dims mismatch");
    ComplexSpectrum out(spectrum.dims);
    parallel_for(spectrum.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out.data[i] = spectrum.data[i] * filter.data[i];
    });
    return out;
}

void add_in_place(ComplexSpectrum& acc, const ComplexSpectrum& term) {
    parallel_for(acc.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) acc.data[i] += term.data[i];
    });
}

Dims level_dims(const Dims& input_dims, int level) {
    Dims dims = input_dims;
    for (auto& d : dims) d >>= (level - 1);
    return dims;
}

}  // namespace

ComplexSpectrum& PyramidCoefficients::detail(int level, int band) {
    return details.at(level - 1).at(band - 1);
}

const ComplexSpectrum& PyramidCoefficients::detail(int level, int band) const {
    return details.at(level - 1).at(band - 1);
}

int max_levels(const Dims& dims) {
    if (dims.empty()) throw std::invalid_argument("max_levels: empty dims");
    int levels = 0;
    while (true) {
        bool ok = true;
        for (std::size_t d : dims) {
            const std::size_t divisor = std::size_t{1} << (levels + 1);
            if (d % divisor != 0 || d / divisor < 2) {
                ok = false;
                break;
            }
        }
        if (!ok) break;
        ++levels;
    }
    return levels;
}

PyramidCoefficients forward_pyramid(const ComplexSpectrum& spectrum, int levels,
                                    int bands, const WaveletFunction& wavelet) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("forward_pyramid expects a standard-layout spectrum");
    if (bands < 1) throw std::invalid_argument("forward_pyramid: bands must be >= 1");
    const int cap = max_levels(spectrum.dims);
    if (levels < 1 || levels > cap)
        throw std::invalid_argument("forward_pyramid: levels must be in 1.." +
                                    std::to_string(cap) + " for these dims");
    if (!is_hermitian(spectrum, 1e-9))
        std::cerr << "warning: pyramid input spectrum is not hermitian; "
                     "reconstruction will not be purely real\n";

    PyramidCoefficients out;
    out.input_dims = spectrum.dims;
    out.levels = levels;
    out.bands = bands;
    out.wavelet = wavelet;
    out.details.resize(static_cast<std::size_t>(levels));
    out.banks.reserve(static_cast<std::size_t>(levels));

    ComplexSpectrum current = spectrum;
    for (int s = 1; s <= levels; ++s) {
        out.banks.push_back(generate_filter_bank(wavelet, current.dims, bands));
        const FilterBank& bank = out.banks.back();
        auto& level_details = out.details[static_cast<std::size_t>(s - 1)];
        level_details.reserve(static_cast<std::size_t>(bands));
        for (int h = 0; h < bands; ++h)
            level_details.push_back(pointwise_product(current, bank.sub_bands[h]));
        current = shrink_spectrum(pointwise_product(current, bank.low_pass));
    }
    out.approximation = std::move(current);
    return out;
}

ComplexSpectrum inverse_pyramid(const PyramidCoefficients& coefficients,
                                bool use_cached_banks) {
    const int levels = coefficients.levels;
    const int bands = coefficients.bands;
    if (levels < 1 || bands < 1)
        throw std::invalid_argument("inverse_pyramid: empty coefficient set");
    if (coefficients.details.size() != static_cast<std::size_t>(levels))
        throw std::invalid_argument("inverse_pyramid: level count mismatch");

    const Dims approx_dims = level_dims(coefficients.input_dims, levels + 1);
    if (coefficients.approximation.dims != approx_dims)
        throw std::invalid_argument("inverse_pyramid: approximation dims mismatch");

    const bool cached =
        use_cached_banks && coefficients.banks.size() == static_cast<std::size_t>(levels);

    ComplexSpectrum current = coefficients.approximation;
    for (int s = levels; s >= 1; --s) {
        const Dims dims = level_dims(coefficients.input_dims, s);
        const auto& level_details = coefficients.details[static_cast<std::size_t>(s - 1)];
        if (level_details.size() != static_cast<std::size_t>(bands))
            throw std::invalid_argument("inverse_pyramid: band count mismatch");
        for (const auto& d : level_details)
            if (d.dims != dims)
                throw std::invalid_argument("inverse_pyramid: detail dims mismatch");

        const FilterBank bank_local =
            cached ? FilterBank{}
                   : generate_filter_bank(coefficients.wavelet, dims, bands);
        const FilterBank& bank =
            cached ? coefficients.banks[static_cast<std::size_t>(s - 1)] : bank_local;
        if (bank.dims != dims)
            throw std::invalid_argument("inverse_pyramid: cached bank dims mismatch");

        current = pointwise_product(expand_spectrum(current), bank.low_pass);
        for (int h = 0; h < bands; ++h)
            add_in_place(current, pointwise_product(level_details[h], bank.sub_bands[h]));
    }
    return current;
}

}  // namespace isowave
