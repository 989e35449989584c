#ifndef INDIST_SYMGROUP_HPP_
#define INDIST_SYMGROUP_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "indist/types.hpp"

namespace indist {

/// Largest N for which the full symmetric group is ever materialized.
inline constexpr int kMaxEnumeratedN = 10;

/// Permutation of {0,...,N-1} stored as its image array.
///
/// Composition follows (a * b)(x) = a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Inverse of rank(): the permutation at position `index` in the
  /// lexicographic order of image arrays.
  static Permutation from_rank(int n, std::uint64_t index);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// Position in the lexicographic order (identity is 0).
  std::uint64_t rank() const;

  /// Disjoint cycles, each starting at its smallest element, ordered by
  /// that element. Fixed points are included as 1-cycles.
  std::vector<std::vector<int>> cycles() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Cycle type (C_1, ..., C_N): counts[k-1] is the number of k-cycles.
struct CycleType {
  std::vector<int> counts;

  int degree() const;
  /// Number of permutations of S_N with this cycle type.
  double class_size() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

CycleType cycle_type(const Permutation& p);

/// All cycle types of S_N (integer partitions of N), identity type first.
std::vector<CycleType> enumerate_cycle_types(int n);

double factorial(int n);

/// The N! elements of S_N in lexicographic order. Requires N <= 10.
std::vector<Permutation> enumerate_permutations(int n);

/// Visits S_N in lexicographic order without materializing it.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);

/// Product of factorials of the occupation numbers.
double multiplicity(const Occupation& n);

/// k-list of an occupation: mode k repeated n_k times, ascending.
ModeList mode_list(const Occupation& n);

/// Subgroup of S_N preserving the blocks of equal entries of a mode list.
class ModeSubgroup {
 public:
  explicit ModeSubgroup(ModeList modes);
  static ModeSubgroup of(const Occupation& n) { return ModeSubgroup(mode_list(n)); }

  int degree() const { return static_cast<int>(modes_.size()); }
  const ModeList& modes() const { return modes_; }
  double order() const;
  bool contains(const Permutation& p) const;
  /// Elements in lexicographic order, identity first.
  std::vector<Permutation> elements() const;

 private:
  ModeList modes_;
};

/// Cycle index Z_N(a_1,...,a_N) = (1/N!) sum_sigma prod_k a_k^{C_k(sigma)}.
/// Evaluated over cycle types, so N is not limited by enumeration.
template <typename Scalar>
Scalar cycle_index(int n, const std::vector<Scalar>& a) {
  Scalar total(0);
  for (const CycleType& ct : enumerate_cycle_types(n)) {
    Scalar term(1);
    for (int k = 1; k <= n; ++k) {
      for (int c = 0; c < ct.counts[k - 1]; ++c) term *= a[k - 1];
    }
    total += term * Scalar(ct.class_size() / factorial(n));
  }
  return total;
}

}  // namespace indist

#endif  // INDIST_SYMGROUP_HPP_
