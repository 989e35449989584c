#ifndef INDIST_NETWORK_HPP_
#define INDIST_NETWORK_HPP_

#include <cstdint>
#include <vector>

#include "indist/types.hpp"

namespace indist {

inline constexpr double kInternalUnitarityTol = 1e-12;
inline constexpr double kUserUnitarityTol = 1e-8;
inline constexpr std::uint64_t kMaxOutputCount = 1'000'000;

/// Discrete Fourier network F_{jk} = exp(2 pi i j k / M) / sqrt(M).
CMatrix fourier(int m);

/// Haar-random M x M unitary, reproducible from `seed`.
CMatrix random_unitary(int m, std::uint64_t seed);

/// max |U^dagger U - 1|.
double unitarity_defect(const CMatrix& u);

/// Throws ValidationError when the defect exceeds `tol`.
void validate_unitary(const CMatrix& u, double tol = kInternalUnitarityTol);

/// Throws ArgumentError unless `n` has `modes` non-negative entries.
void validate_occupation(const Occupation& n, int modes);

int total_photons(const Occupation& n);

/// U[n|m]: rows repeated according to the k-list of n, columns according to
/// the l-list of m.
CMatrix submatrix(const CMatrix& u, const Occupation& n, const Occupation& m);

std::uint64_t binomial(int n, int k);

/// All occupations of M modes by N photons, in descending lexicographic
/// order ((N,0,...,0) first).
std::vector<Occupation> enumerate_outputs(int modes, int photons);

}  // namespace indist

#endif  // INDIST_NETWORK_HPP_
