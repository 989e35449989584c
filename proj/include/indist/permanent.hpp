#ifndef INDIST_PERMANENT_HPP_
#define INDIST_PERMANENT_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "indist/errors.hpp"

namespace indist {

inline constexpr int kMaxRyserSize = 24;
inline constexpr int kMaxNaiveSize = 9;
inline constexpr double kPermanentZeroTol = 1e-12;

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, int cap, const char* what) {
  if (a.rows() != a.cols()) throw ArgumentError(std::string(what) + ": matrix is not square");
  if (a.rows() > cap) {
    throw SizeLimitError(std::string(what) + ": size " + std::to_string(a.rows()) +
                         " exceeds limit " + std::to_string(cap));
  }
}

// Sum of the Ryser terms for Gray-code indices [begin, end), begin >= 1.
template <typename Scalar, typename Derived>
Scalar ryser_block(const Eigen::MatrixBase<Derived>& a, std::uint64_t begin, std::uint64_t end) {
  const int n = static_cast<int>(a.rows());
  std::vector<Scalar> row_sums(n, Scalar(0));
  std::uint64_t gray = (begin - 1) ^ ((begin - 1) >> 1);
  for (int j = 0; j < n; ++j) {
    if (gray >> j & 1U) {
      for (int i = 0; i < n; ++i) row_sums[i] += a(i, j);
    }
  }
  Scalar total(0);
  for (std::uint64_t k = begin; k < end; ++k) {
    const int j = std::countr_zero(k);
    const bool adding = !((gray >> j) & 1U);
    gray ^= (std::uint64_t{1} << j);
    if (adding) {
      for (int i = 0; i < n; ++i) row_sums[i] += a(i, j);
    } else {
      for (int i = 0; i < n; ++i) row_sums[i] -= a(i, j);
    }
    Scalar prod(1);
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    // Sign (-1)^{|S|}, with |S| the popcount of the current subset.
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

}  // namespace detail

/// Permanent by Ryser's inclusion-exclusion formula in Gray-code order.
///
/// O(2^n n). The subset range is cut into a fixed number of chunks that are
/// summed in order, so the result does not depend on `threads`.
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& a, int threads = 1) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, kMaxRyserSize, "permanent_ryser");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Scalar(1);
  const std::uint64_t total_terms = std::uint64_t{1} << n;
  const int chunks = n >= 16 ? 64 : 1;
  std::vector<Scalar> partial(chunks, Scalar(0));
  auto chunk_range = [&](int c) {
    std::uint64_t span = (total_terms - 1) / chunks;
    std::uint64_t lo = 1 + span * c;
    std::uint64_t hi = c == chunks - 1 ? total_terms : lo + span;
    return std::pair{lo, hi};
  };
  const int workers = std::max(1, std::min(threads, chunks));
  if (workers == 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [lo, hi] = chunk_range(c);
      partial[c] = detail::ryser_block<Scalar>(a, lo, hi);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int c = w; c < chunks; c += workers) {
          auto [lo, hi] = chunk_range(c);
          partial[c] = detail::ryser_block<Scalar>(a, lo, hi);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  Scalar total(0);
  for (const Scalar& p : partial) total += p;
  return (n % 2 == 0) ? total : Scalar(-total);
}

/// Permanent as the explicit sum over all n! permutations. Reference
/// implementation for small matrices.
template <typename Derived>
typename Derived::Scalar permanent_naive(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, kMaxNaiveSize, "permanent_naive");
  const int n = static_cast<int>(a.rows());
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar total(0);
  do {
    Scalar prod(1);
    for (int i = 0; i < n; ++i) prod *= a(i, sigma[i]);
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// Laplace-type expansion along the first k rows:
/// per(A) = sum over k-subsets T of columns of per(A[0..k) x T) per(A[k..n) x T^c).
template <typename Derived>
typename Derived::Scalar permanent_laplace(const Eigen::MatrixBase<Derived>& a, int k) {
  using Scalar = typename Derived::Scalar;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_square(a, kMaxRyserSize, "permanent_laplace");
  const int n = static_cast<int>(a.rows());
  if (k < 0 || k > n) throw ArgumentError("permanent_laplace: split row out of range");
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  Scalar total(0);
  do {
    Dense top(k, k);
    Dense bottom(n - k, n - k);
    int tc = 0;
    int bc = 0;
    for (int j = 0; j < n; ++j) {
      if (pick[j]) {
        for (int i = 0; i < k; ++i) top(i, tc) = a(i, j);
        ++tc;
      } else {
        for (int i = k; i < n; ++i) bottom(i - k, bc) = a(i, j);
        ++bc;
      }
    }
    total += permanent_ryser(top) * permanent_ryser(bottom);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

/// Product over columns of the largest entry modulus, floored at 1.
template <typename Derived>
double permanent_scale(const Eigen::MatrixBase<Derived>& a) {
  double scale = 1.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double col_max = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) col_max = std::max(col_max, std::abs(a(i, j)));
    scale *= col_max;
  }
  return std::max(1.0, scale);
}

/// Scale-aware zero test for a permanent value computed from `a`.
template <typename Scalar, typename Derived>
bool is_permanent_zero(const Scalar& value, const Eigen::MatrixBase<Derived>& a,
                       double tol = kPermanentZeroTol) {
  return std::abs(value) < tol * permanent_scale(a);
}

}  // namespace indist

#endif  // INDIST_PERMANENT_HPP_
