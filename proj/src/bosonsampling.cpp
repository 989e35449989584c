#include "indist/bosonsampling.hpp"

#include <cmath>
#include <string>

#include "indist/errors.hpp"

namespace indist {

namespace {

void check(const BosonSamplingParams& p) {
  if (p.n < 1) throw DomainError("need at least one photon");
  if (!(p.gamma >= 0.0 && p.gamma < 1.0)) {
    throw DomainError("gamma must lie in [0, 1), got " + std::to_string(p.gamma));
  }
}

}  // namespace

double gamma_from_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("eta must be finite and >= 0");
  const double e2 = 2.0 * eta * eta;
  return e2 / (1.0 + e2);
}

BosonSamplingParams BosonSamplingParams::from_eta(int n, double eta) {
  BosonSamplingParams p{n, gamma_from_eta(eta)};
  check(p);
  return p;
}

BosonSamplingParams BosonSamplingParams::from_widths(int n, double d_omega, double d_tau) {
  if (d_omega <= 0.0 || d_tau < 0.0) throw DomainError("invalid bandwidth or jitter");
  return from_eta(n, d_omega * d_tau);
}

double BosonSamplingParams::eta() const { return std::sqrt(gamma / (2.0 * (1.0 - gamma))); }

double gk_closed(double gamma, int k) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
  if (k < 1) throw DomainError("g_k needs k >= 1");
  return std::pow(1.0 - gamma, 0.5 * k) / std::sqrt(1.0 - std::pow(gamma, k));
}

double gk_exact(double gamma, int k) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
  if (k < 1) throw DomainError("g_k needs k >= 1");
  const double pi = std::acos(-1.0);
  double prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= 1.0 - gamma * std::cos(2.0 * pi * j / k);
  return std::pow(1.0 - gamma, 0.5 * k) / std::sqrt(prod);
}

double j_entry(const BosonSamplingParams& p, const CycleType& ct) {
  check(p);
  if (ct.degree() != p.n) throw ArgumentError("cycle type degree differs from N");
  double v = 1.0;
  for (int k = 1; k <= p.n; ++k) v *= std::pow(gk_closed(p.gamma, k), ct.counts[k - 1]);
  return v;
}

PurityResult purity_closed(const BosonSamplingParams& p) {
  check(p);
  double trace = 1.0;
  double power = 1.0;
  for (int k = 1; k <= p.n; ++k) {
    power *= p.gamma;
    trace *= (1.0 - p.gamma) / (1.0 - power);
  }
  return purity_from_trace(trace, p.n);
}

PurityResult purity_direct(const BosonSamplingParams& p) {
  check(p);
  if (p.n > kMaxEnumeratedN) throw SizeLimitError("direct purity limited to N <= 10");
  std::vector<double> a(p.n);
  for (int k = 1; k <= p.n; ++k) a[k - 1] = 1.0 / (1.0 - std::pow(p.gamma, k));
  return purity_from_trace(std::pow(1.0 - p.gamma, p.n) * cycle_index(p.n, a), p.n);
}

SmallGammaCheck small_gamma_expansion_check(const BosonSamplingParams& p) {
  check(p);
  const double eta = p.eta();
  const double eta2 = eta * eta;
  if (eta2 > 1e-3) throw DomainError("small-gamma check needs eta^2 <= 1e-3");
  SmallGammaCheck c;
  c.trace = purity_closed(p).trace;
  c.approximation = 1.0 - 2.0 * (p.n - 1) * eta2;
  c.deviation = std::abs(c.trace - c.approximation);
  c.coefficient = eta2 > 0.0 ? c.deviation / (eta2 * eta2 * p.n * p.n) : 0.0;
  return c;
}

std::vector<PurityRow> purity_curve(const std::vector<int>& n_list,
                                    const std::vector<double>& gammas) {
  std::vector<PurityRow> rows;
  for (double g : gammas) {
    for (int n : n_list) {
      const PurityResult r = purity_closed({n, g});
      rows.push_back({g, n, r.purity, r.trace});
    }
  }
  return rows;
}

MixedState arrival_time_state(double d_omega, double d_tau, int nodes) {
  return jittered_arrival(GaussianState{0.0, d_omega, 0.0, 0}, d_tau, nodes);
}

}  // namespace indist
