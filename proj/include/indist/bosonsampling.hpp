#ifndef INDIST_BOSONSAMPLING_HPP_
#define INDIST_BOSONSAMPLING_HPP_

#include <vector>

#include "indist/jmatrix.hpp"
#include "indist/spectral.hpp"
#include "indist/symgroup.hpp"

namespace indist {

/// N identical single photons of bandwidth d_omega with Gaussian arrival
/// time jitter d_tau, ideal detectors. Everything depends on
///   gamma = 2 eta^2 / (1 + 2 eta^2),  eta = d_omega * d_tau.
struct BosonSamplingParams {
  int n = 1;
  double gamma = 0.0;

  static BosonSamplingParams from_eta(int n, double eta);
  static BosonSamplingParams from_widths(int n, double d_omega, double d_tau);

  /// eta recovered from gamma.
  double eta() const;
};

double gamma_from_eta(double eta);

/// g_k = (1 - gamma)^{k/2} (1 - gamma^k)^{-1/2}.
double gk_closed(double gamma, int k);

/// Tr{rho^k} of the arrival-time model evaluated exactly,
///   g_k = (1 - gamma)^{k/2} prod_{j<k} (1 - gamma cos(2 pi j / k))^{-1/2}.
/// Agrees with gk_closed for k <= 2 only.
double gk_exact(double gamma, int k);

/// J entry for a relative permutation of the given cycle type.
double j_entry(const BosonSamplingParams& p, const CycleType& ct);

/// Tr{(J/N!)^2} = prod_{k=1}^N (1 - gamma) / (1 - gamma^k) and the
/// normalized purity derived from it.
PurityResult purity_closed(const BosonSamplingParams& p);

/// Same quantity through the cycle index (1-gamma)^N Z_N(1/(1-gamma^k)).
/// Requires N <= 10.
PurityResult purity_direct(const BosonSamplingParams& p);

struct SmallGammaCheck {
  double trace = 0.0;
  double approximation = 0.0;  // 1 - 2 (N - 1) eta^2
  double deviation = 0.0;
  double coefficient = 0.0;    // deviation / (eta^4 N^2)
};

/// Compares the exact trace to its first-order expansion; needs eta^2 <= 1e-3.
SmallGammaCheck small_gamma_expansion_check(const BosonSamplingParams& p);

struct PurityRow {
  double gamma = 0.0;
  int n = 0;
  double purity = 0.0;
  double trace = 0.0;
};

/// Closed-form purity over a grid, ordered by gamma then by the order of
/// `n_list`.
std::vector<PurityRow> purity_curve(const std::vector<int>& n_list,
                                    const std::vector<double>& gammas);

/// The single-photon state of the model as a quadrature ensemble, centred
/// at omega = 0 with arrival time jitter d_tau.
MixedState arrival_time_state(double d_omega, double d_tau, int nodes = kDefaultQuadratureNodes);

}  // namespace indist

#endif  // INDIST_BOSONSAMPLING_HPP_
