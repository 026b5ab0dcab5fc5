#include "isowave/wavelets.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "isowave/frequency.hpp"
#include "isowave/parallel.hpp"

namespace isowave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kQuarterPi = kPi / 4.0;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
    return r;
}

}  // namespace

std::string to_string(WaveletKind kind) {
    switch (kind) {
        case WaveletKind::Vow: return "vow";
        case WaveletKind::Held: return "held";
        case WaveletKind::Simoncelli: return "simoncelli";
        case WaveletKind::Shannon: return "shannon";
    }
    throw std::invalid_argument("unknown wavelet kind");
}

WaveletKind wavelet_from_string(const std::string& name) {
    if (name == "vow") return WaveletKind::Vow;
    if (name == "held") return WaveletKind::Held;
    if (name == "simoncelli") return WaveletKind::Simoncelli;
    if (name == "shannon") return WaveletKind::Shannon;
    throw std::invalid_argument("unknown wavelet \"" + name +
                                "\" (expected vow, held, simoncelli, or shannon)");
}

double HeldPolynomial::operator()(double t) const {
    // Horner in s keeps B_n(0) = 0 and B_n(1) = 1 exact (integer coefficients).
    const double s = 8.0 * t - 1.0;
    double b = 0.0;
    for (std::size_t i = smoothstep_coeffs.size(); i-- > 0;)
        b = b * s + smoothstep_coeffs[i];
    return 0.25 * (1.0 - b);
}

HeldPolynomial held_polynomial(int order) {
    if (order < 0 || order > 5)
        throw std::invalid_argument("held_polynomial: order must be in 0..5");
    HeldPolynomial poly;
    poly.order = order;
    poly.smoothstep_coeffs.assign(2 * order + 2, 0.0);
    // B_n(s) = sum_{k=0..n} C(n+k,k) C(2n+1,n-k) (-1)^k s^(n+1+k), the unique
    // degree-(2n+1) polynomial with B(0)=0, B(1)=1 and n flat derivatives at
    // both ends.
    for (int k = 0; k <= order; ++k) {
        double c = binomial(order + k, k) * binomial(2 * order + 1, order - k);
        if (k % 2 != 0) c = -c;
        poly.smoothstep_coeffs[order + 1 + k] = c;
    }
    return poly;
}

WaveletFunction make_wavelet(WaveletKind kind, double kappa, int held_order) {
    if (!(kappa > 0.0) || !(kappa < kHalfPi))
        throw std::invalid_argument("make_wavelet: kappa must lie in (0, pi/2)");
    WaveletFunction w;
    w.kind = kind;
    w.kappa = kappa;
    w.held_order = held_order;
    if (kind == WaveletKind::Held) w.held_poly = held_polynomial(held_order);
    return w;
}

double eval_mother(const WaveletFunction& wavelet, double w) {
    if (w < 0.0) throw std::invalid_argument("eval_mother: negative frequency");
    switch (wavelet.kind) {
        case WaveletKind::Vow: {
            const double norm = 2.0 * std::tan(wavelet.kappa);
            if (w >= kQuarterPi && w < kHalfPi) {
                const double arg = wavelet.kappa * (1.0 + 2.0 * std::log2(2.0 * w / kPi));
                return std::sqrt(std::max(0.0, 0.5 + std::tan(arg) / norm));
            }
            if (w >= kHalfPi && w <= kPi) {
                const double arg = wavelet.kappa * (1.0 + 2.0 * std::log2(w / kPi));
                return std::sqrt(std::max(0.0, 0.5 - std::tan(arg) / norm));
            }
            return 0.0;
        }
        case WaveletKind::Held: {
            if (w > kQuarterPi && w <= kHalfPi)
                return std::cos(2.0 * kPi * wavelet.held_poly(w / (2.0 * kPi)));
            if (w > kHalfPi && w <= kPi)
                return std::sin(2.0 * kPi * wavelet.held_poly(w / (4.0 * kPi)));
            return 0.0;
        }
        case WaveletKind::Simoncelli: {
            if (w > kQuarterPi && w <= kPi)
                return std::cos(kHalfPi * std::log2(2.0 * w / kPi));
            return 0.0;
        }
        case WaveletKind::Shannon:
            // Half-open support tiles the dyadic octaves without double
            // counting and keeps the level low-pass zero at ||w|| = pi/2,
            // which the pyramid's downsampling fold relies on.
            return (w >= kHalfPi && w < kPi) ? 1.0 : 0.0;
    }
    throw std::invalid_argument("unknown wavelet kind");
}

double eval_level_lowpass(const WaveletFunction& wavelet, double w) {
    if (w < 0.0) throw std::invalid_argument("eval_level_lowpass: negative frequency");
    // The dilation sum only makes sense off DC; the filters pin LP(0) = 1 so
    // the mean survives every low-pass stage.
    if (w == 0.0) return 1.0;
    int i = 1;
    if (std::ldexp(w, 1) < kQuarterPi) {
        // Jump to the dilation just below the support; at most two octaves of
        // the sum are nonzero, so the loop below stays short.
        i = std::ilogb(kQuarterPi) - std::ilogb(w);
        while (i > 1 && std::ldexp(w, i) >= kQuarterPi) --i;
        if (i < 1) i = 1;
    }
    double acc = 0.0;
    for (; ; ++i) {
        const double scaled = std::ldexp(w, i);
        if (scaled > kPi) break;
        const double h = eval_mother(wavelet, scaled);
        acc += h * h;
    }
    return std::sqrt(acc);
}

std::vector<double> eval_subbands(const WaveletFunction& wavelet, int bands, double w) {
    if (bands < 1) throw std::invalid_argument("eval_subbands: bands must be >= 1");
    if (w < 0.0) throw std::invalid_argument("eval_subbands: negative frequency");
    const double lp = eval_level_lowpass(wavelet, w);
    const double hp2 = std::max(0.0, 1.0 - lp * lp);
    std::vector<double> out(static_cast<std::size_t>(bands), 0.0);
    if (bands == 1) {
        out[0] = std::sqrt(hp2);
        return out;
    }
    std::vector<double> weights(static_cast<std::size_t>(bands));
    double total = 0.0;
    for (int b = 1; b <= bands; ++b) {
        const double dilation = std::exp2(static_cast<double>(bands - b) / bands);
        const double h = eval_mother(wavelet, dilation * w);
        weights[b - 1] = h * h;
        total += weights[b - 1];
    }
    if (total == 0.0) {
        // Outside every fractional window (notably the grid corners beyond
        // pi): hand the whole residual to one band.
        out[lp < 0.5 ? bands - 1 : 0] = std::sqrt(hp2);
        return out;
    }
    for (int b = 0; b < bands; ++b) out[b] = std::sqrt(hp2 * weights[b] / total);
    return out;
}

FilterBank generate_filter_bank(const WaveletFunction& wavelet, const Dims& dims,
                                int bands) {
    if (dims.empty()) throw std::invalid_argument("generate_filter_bank: empty dims");
    for (std::size_t d : dims)
        if (d < 2) throw std::invalid_argument("generate_filter_bank: dims must all be >= 2");
    if (bands < 1) throw std::invalid_argument("generate_filter_bank: bands must be >= 1");

    FilterBank bank;
    bank.dims = dims;
    bank.bands = bands;
    bank.low_pass = ComplexSpectrum(dims);
    bank.sub_bands.assign(static_cast<std::size_t>(bands), ComplexSpectrum(dims));

    const std::size_t total = total_size(dims);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const auto freq =
                bin_to_frequency(FrequencyLayout::Standard, dims, coords_of(dims, idx));
            const double r = radial_frequency(freq);
            bank.low_pass.data[idx] = eval_level_lowpass(wavelet, r);
            const auto hp = eval_subbands(wavelet, bands, r);
            for (int b = 0; b < bands; ++b) bank.sub_bands[b].data[idx] = hp[b];
        }
    });
    return bank;
}

ProfileTable emit_profile(const WaveletFunction& wavelet, int bands, int n_samples) {
    if (bands < 1) throw std::invalid_argument("emit_profile: bands must be >= 1");
    if (n_samples < 2) throw std::invalid_argument("emit_profile: need at least 2 samples");
    ProfileTable table;
    table.subbands.assign(static_cast<std::size_t>(bands), {});
    const double top = 1.05 * kPi;
    for (int i = 0; i < n_samples; ++i) {
        const double w = top * static_cast<double>(i) / (n_samples - 1);
        table.omega.push_back(w);
        table.mother.push_back(eval_mother(wavelet, w));
        const auto hp = eval_subbands(wavelet, bands, w);
        for (int b = 0; b < bands; ++b) table.subbands[b].push_back(hp[b]);
        table.lowpass.push_back(eval_level_lowpass(wavelet, w));
    }
    return table;
}

void write_profile_csv(const ProfileTable& table, std::ostream& out) {
    out << "omega,h";
    for (std::size_t b = 0; b < table.subbands.size(); ++b) out << ",h_" << (b + 1);
    out << ",lp\n";
    out << std::setprecision(6);
    for (std::size_t i = 0; i < table.omega.size(); ++i) {
        out << table.omega[i] << ',' << table.mother[i];
        for (const auto& band : table.subbands) out << ',' << band[i];
        out << ',' << table.lowpass[i] << '\n';
    }
}

}  // namespace isowave
