#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "isowave/image.hpp"

namespace isowave {

// Exponent vector n = (n_1, ..., n_d), |n| = sum = transform order.
using MultiIndex = std::vector<int>;

// Number of order-N components in d dimensions: (N+d-1)! / ((d-1)! N!).
std::size_t riesz_component_count(int order, int dim);

// All multiindices of total degree `order`, descending lexicographic, so
// (1,0,0), (0,1,0), (0,0,1) for order 1 in 3-D.
std::vector<MultiIndex> multiindices(int order, int dim);

// Frequency response of one component:
//   (-j)^N sqrt(N!/n!) w^n / ||w||^N,   0 at w = 0.
std::complex<double> eval_riesz_component(const MultiIndex& index,
                                          const std::vector<double>& freq);

/// All components of one order sampled on a grid, Standard layout.
struct RieszBank {
    int order = 1;
    Dims dims;
    std::vector<MultiIndex> index_order;
    std::vector<ComplexSpectrum> components;
};

RieszBank generate_riesz_bank(int order, const Dims& dims);

// Pointwise products bank[i] * spectrum, one output per component.
std::vector<ComplexSpectrum> apply_riesz(const RieszBank& bank,
                                         const ComplexSpectrum& spectrum);

/// Coefficient mixing matrix for a rotation: the unique S with
///   sqrt(N!/n!) (R^T u)^n = sum_m S[n,m] sqrt(N!/m!) u^m  for all u.
/// Rows and columns follow multiindices(order, dim). For order 1, S = R^T.
/// Note R -> S(R) reverses composition: S(R1 R2) = S(R2) S(R1).
struct SteerMatrix {
    int order = 1;
    int dim = 2;
    Eigen::MatrixXd rotation;  // the R this matrix was built from
    Eigen::MatrixXd matrix;    // M x M, M = riesz_component_count
};

// R must be orthogonal: ||R^T R - I||_max < 1e-8.
SteerMatrix steer_matrix(const Eigen::MatrixXd& rotation, int order);

// Mixes one coefficient vector (length M).
std::vector<double> steer_coefficients(const SteerMatrix& steer,
                                       const std::vector<double>& values);

// Mixes a full set of component images sample by sample.
std::vector<RealImage> steer_coefficients(const SteerMatrix& steer,
                                          const std::vector<RealImage>& components);

}  // namespace isowave
