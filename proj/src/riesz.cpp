#include "isowave/riesz.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "isowave/frequency.hpp"
#include "isowave/parallel.hpp"

namespace isowave {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double multiindex_factorial(const MultiIndex& index) {
    double f = 1.0;
    for (int n : index) f *= factorial(n);
    return f;
}

int multiindex_order(const MultiIndex& index) {
    int total = 0;
    for (int n : index) {
        if (n < 0) throw std::invalid_argument("multiindex entries must be >= 0");
        total += n;
    }
    return total;
}

// (-j)^N cycles through 1, -j, -1, j.
std::complex<double> minus_j_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

void enumerate(int remaining, int axis, int dim, MultiIndex& scratch,
               std::vector<MultiIndex>& out) {
    if (axis == dim - 1) {
        scratch[axis] = remaining;
        out.push_back(scratch);
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        scratch[axis] = n;
        enumerate(remaining - n, axis + 1, dim, scratch, out);
    }
}

}  // namespace

std::size_t riesz_component_count(int order, int dim) {
    if (order < 0) throw std::invalid_argument("riesz_component_count: order must be >= 0");
    if (dim < 1) throw std::invalid_argument("riesz_component_count: dim must be >= 1");
    // (N+d-1 choose d-1), computed multiplicatively to stay exact.
    std::size_t count = 1;
    for (int i = 1; i <= dim - 1; ++i)
        count = count * static_cast<std::size_t>(order + i) / static_cast<std::size_t>(i);
    return count;
}

std::vector<MultiIndex> multiindices(int order, int dim) {
    if (order < 0) throw std::invalid_argument("multiindices: order must be >= 0");
    if (dim < 1) throw std::invalid_argument("multiindices: dim must be >= 1");
    std::vector<MultiIndex> out;
    out.reserve(riesz_component_count(order, dim));
    MultiIndex scratch(static_cast<std::size_t>(dim), 0);
    enumerate(order, 0, dim, scratch, out);
    return out;
}

std::complex<double> eval_riesz_component(const MultiIndex& index,
                                          const std::vector<double>& freq) {
    if (index.size() != freq.size())
        throw std::invalid_argument("eval_riesz_component: rank mismatch");
    const int order = multiindex_order(index);
    if (order < 1) throw std::invalid_argument("eval_riesz_component: order must be >= 1");
    const double norm = radial_frequency(freq);
    if (norm == 0.0) return {0.0, 0.0};
    double value = std::sqrt(factorial(order) / multiindex_factorial(index));
    for (std::size_t i = 0; i < freq.size(); ++i)
        for (int p = 0; p < index[i]; ++p) value *= freq[i] / norm;
    return minus_j_pow(order) * value;
}

RieszBank generate_riesz_bank(int order, const Dims& dims) {
    if (order < 1) throw std::invalid_argument("generate_riesz_bank: order must be >= 1");
    if (dims.empty()) throw std::invalid_argument("generate_riesz_bank: empty dims");

    RieszBank bank;
    bank.order = order;
    bank.dims = dims;
    bank.index_order = multiindices(order, static_cast<int>(dims.size()));
    bank.components.assign(bank.index_order.size(), ComplexSpectrum(dims));

    const std::size_t total = total_size(dims);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const auto freq =
                bin_to_frequency(FrequencyLayout::Standard, dims, coords_of(dims, idx));
            for (std::size_t c = 0; c < bank.index_order.size(); ++c)
                bank.components[c].data[idx] =
                    eval_riesz_component(bank.index_order[c], freq);
        }
    });
    return bank;
}

std::vector<ComplexSpectrum> apply_riesz(const RieszBank& bank,
                                         const ComplexSpectrum& spectrum) {
    spectrum.validate();
    if (spectrum.layout != FrequencyLayout::Standard)
        throw std::invalid_argument("apply_riesz expects a standard-layout spectrum");
    if (spectrum.dims != bank.dims)
        throw std::invalid_argument("apply_riesz: dims mismatch with bank");
    std::vector<ComplexSpectrum> out;
    out.reserve(bank.components.size());
    for (const auto& component : bank.components) {
        ComplexSpectrum product(spectrum.dims);
        parallel_for(spectrum.size(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                product.data[i] = spectrum.data[i] * component.data[i];
        });
        out.push_back(std::move(product));
    }
    return out;
}

SteerMatrix steer_matrix(const Eigen::MatrixXd& rotation, int order) {
    if (order < 1) throw std::invalid_argument("steer_matrix: order must be >= 1");
    if (rotation.rows() != rotation.cols() || rotation.rows() < 1)
        throw std::invalid_argument("steer_matrix: rotation must be square");
    const int dim = static_cast<int>(rotation.rows());
    const Eigen::MatrixXd gram =
        rotation.transpose() * rotation - Eigen::MatrixXd::Identity(dim, dim);
    if (gram.cwiseAbs().maxCoeff() >= 1e-8)
        throw std::invalid_argument("steer_matrix: rotation is not orthogonal");

    const auto indices = multiindices(order, dim);
    const std::size_t m = indices.size();
    std::map<MultiIndex, std::size_t> position;
    for (std::size_t i = 0; i < m; ++i) position[indices[i]] = i;

    SteerMatrix steer;
    steer.order = order;
    steer.dim = dim;
    steer.rotation = rotation;
    steer.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                         static_cast<Eigen::Index>(m));

    // Row n: expand prod_i (sum_j R^T(i,j) u_j)^(n_i) and collect monomial
    // coefficients; the sqrt(m!/n!) factor converts between the normalized
    // bases on each side.
    const Eigen::MatrixXd subst = rotation.transpose();
    for (std::size_t r = 0; r < m; ++r) {
        std::map<MultiIndex, double> poly;
        poly[MultiIndex(static_cast<std::size_t>(dim), 0)] = 1.0;
        for (int axis = 0; axis < dim; ++axis) {
            for (int rep = 0; rep < indices[r][static_cast<std::size_t>(axis)]; ++rep) {
                std::map<MultiIndex, double> next;
                for (const auto& [expo, coeff] : poly) {
                    for (int j = 0; j < dim; ++j) {
                        const double factor = subst(axis, j);
                        if (factor == 0.0) continue;
                        MultiIndex bumped = expo;
                        ++bumped[static_cast<std::size_t>(j)];
                        next[bumped] += coeff * factor;
                    }
                }
                poly = std::move(next);
            }
        }
        const double row_fac = multiindex_factorial(indices[r]);
        for (const auto& [expo, coeff] : poly) {
            const std::size_t c = position.at(expo);
            steer.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                coeff * std::sqrt(multiindex_factorial(indices[c]) / row_fac);
        }
    }
    return steer;
}

std::vector<double> steer_coefficients(const SteerMatrix& steer,
                                       const std::vector<double>& values) {
    const auto m = static_cast<std::size_t>(steer.matrix.rows());
    if (values.size() != m)
        throw std::invalid_argument("steer_coefficients: component count mismatch");
    Eigen::VectorXd v(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) v[static_cast<Eigen::Index>(i)] = values[i];
    Eigen::VectorXd mixed = steer.matrix * v;
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = mixed[static_cast<Eigen::Index>(i)];
    return out;
}

std::vector<RealImage> steer_coefficients(const SteerMatrix& steer,
                                          const std::vector<RealImage>& components) {
    const auto m = static_cast<std::size_t>(steer.matrix.rows());
    if (components.size() != m)
        throw std::invalid_argument("steer_coefficients: component count mismatch");
    for (const auto& c : components)
        if (c.dims != components[0].dims)
            throw std::invalid_argument("steer_coefficients: component dims mismatch");

    std::vector<RealImage> out(m, RealImage(components[0].dims));
    const std::size_t total = components[0].size();
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t r = 0; r < m; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < m; ++c)
                    acc += steer.matrix(static_cast<Eigen::Index>(r),
                                        static_cast<Eigen::Index>(c)) *
                           components[c].data[i];
                out[r].data[i] = acc;
            }
        }
    });
    return out;
}

}  // namespace isowave
