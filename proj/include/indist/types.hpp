#ifndef INDIST_TYPES_HPP_
#define INDIST_TYPES_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace indist {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Occupation numbers per mode, modes are 0-based.
using Occupation = std::vector<int>;

/// Expanded mode list: mode k repeated n_k times, ascending.
using ModeList = std::vector<int>;

}  // namespace indist

#endif  // INDIST_TYPES_HPP_
