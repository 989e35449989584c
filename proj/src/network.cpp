#include "indist/network.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "indist/errors.hpp"
#include "indist/symgroup.hpp"

namespace indist {

CMatrix fourier(int m) {
  if (m < 1) throw ArgumentError("Fourier network needs at least one mode");
  CMatrix f(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // Reduce the exponent first so large j*k do not lose phase accuracy.
      const int e = (j * k) % m;
      f(j, k) = std::polar(norm, 2.0 * std::numbers::pi * e / m);
    }
  }
  return f;
}

CMatrix random_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw ArgumentError("random unitary needs at least one mode");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

void validate_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw ValidationError("network matrix must be square and non-empty");
  }
  const double defect = unitarity_defect(u);
  if (!(defect <= tol)) {
    throw ValidationError("network matrix is not unitary (defect " + std::to_string(defect) +
                          ")");
  }
}

void validate_occupation(const Occupation& n, int modes) {
  if (static_cast<int>(n.size()) != modes) {
    throw ArgumentError("occupation has " + std::to_string(n.size()) + " entries, network has " +
                        std::to_string(modes) + " modes");
  }
  for (int v : n) {
    if (v < 0) throw ArgumentError("negative occupation number");
  }
}

int total_photons(const Occupation& n) {
  int total = 0;
  for (int v : n) total += v;
  return total;
}

CMatrix submatrix(const CMatrix& u, const Occupation& n, const Occupation& m) {
  validate_occupation(n, static_cast<int>(u.rows()));
  validate_occupation(m, static_cast<int>(u.cols()));
  if (total_photons(n) != total_photons(m)) {
    throw ArgumentError("input and output photon numbers differ");
  }
  const ModeList k = mode_list(n);
  const ModeList l = mode_list(m);
  const auto size = static_cast<Eigen::Index>(k.size());
  CMatrix sub(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) sub(i, j) = u(k[i], l[j]);
  }
  return sub;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::vector<Occupation> enumerate_outputs(int modes, int photons) {
  if (modes < 1 || photons < 0) throw ArgumentError("invalid mode or photon count");
  const std::uint64_t count = binomial(modes + photons - 1, photons);
  if (count > kMaxOutputCount) {
    throw SizeLimitError("output space has " + std::to_string(count) + " configurations");
  }
  std::vector<Occupation> out;
  out.reserve(count);
  Occupation cur(modes, 0);
  cur[0] = photons;
  while (true) {
    out.push_back(cur);
    // Predecessor in lexicographic order with fixed total.
    int i = modes - 2;
    while (i >= 0 && cur[i] == 0) --i;
    if (i < 0) break;
    --cur[i];
    int tail = 0;
    for (int j = i + 1; j < modes; ++j) {
      tail += cur[j];
      cur[j] = 0;
    }
    cur[i + 1] = tail + 1;
  }
  return out;
}

}  // namespace indist
