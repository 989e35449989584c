#include "indist/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "indist/errors.hpp"

namespace indist {

namespace {

constexpr double kPi = std::numbers::pi;

// <a| Gamma |b> for Gaussian packets, optionally weighted by a Gaussian band
// of width `band_width` centred at `band_center` (band_width <= 0: flat).
Complex gaussian_overlap(const GaussianState& a, const GaussianState& b, double band_center,
                         double band_width) {
  std::vector<std::pair<double, double>> quad = {
      {1.0 / (4.0 * a.delta * a.delta), a.omega},
      {1.0 / (4.0 * b.delta * b.delta), b.omega},
  };
  if (band_width > 0.0) quad.emplace_back(1.0 / (2.0 * band_width * band_width), band_center);
  double curvature = 0.0;
  double centroid = 0.0;
  for (auto [q, m] : quad) {
    curvature += q;
    centroid += q * m;
  }
  centroid /= curvature;
  double spread = 0.0;
  for (auto [q, m] : quad) spread += q * (m - centroid) * (m - centroid);
  const double tau = b.t - a.t;
  const double prefactor = std::pow(2.0 * kPi * a.delta * a.delta, -0.25) *
                           std::pow(2.0 * kPi * b.delta * b.delta, -0.25) *
                           std::sqrt(kPi / curvature);
  const double magnitude = prefactor * std::exp(-spread - tau * tau / (4.0 * curvature));
  return std::polar(magnitude, tau * centroid);
}

[[noreturn]] void incompatible(const char* what) {
  throw ArgumentError(std::string("detector/state mismatch: ") + what);
}

}  // namespace

DetectorModel DetectorModel::ideal() { return DetectorModel{}; }

DetectorModel DetectorModel::flat(double eta) {
  DetectorModel d;
  d.kind = Kind::kFlat;
  d.efficiency = eta;
  return d;
}

DetectorModel DetectorModel::gaussian_band(double center, double width, double peak) {
  DetectorModel d;
  d.kind = Kind::kGaussianBand;
  d.center = center;
  d.width = width;
  d.peak = peak;
  return d;
}

DetectorModel DetectorModel::matrix(CMatrix op) {
  DetectorModel d;
  d.kind = Kind::kMatrix;
  d.op = std::move(op);
  return d;
}

double DetectorModel::response(double omega, int pol) const {
  switch (kind) {
    case Kind::kIdeal:
      return 1.0;
    case Kind::kFlat:
      return efficiency * pol_efficiency[pol];
    case Kind::kGaussianBand:
      return peak * pol_efficiency[pol] *
             std::exp(-(omega - center) * (omega - center) / (2.0 * width * width));
    case Kind::kMatrix:
      break;
  }
  throw ArgumentError("matrix detectors have no frequency response");
}

bool operator==(const DetectorModel& a, const DetectorModel& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case DetectorModel::Kind::kIdeal:
      return true;
    case DetectorModel::Kind::kFlat:
      return a.efficiency == b.efficiency && a.pol_efficiency == b.pol_efficiency;
    case DetectorModel::Kind::kGaussianBand:
      return a.center == b.center && a.width == b.width && a.peak == b.peak &&
             a.pol_efficiency == b.pol_efficiency;
    case DetectorModel::Kind::kMatrix:
      return a.op.rows() == b.op.rows() && a.op.cols() == b.op.cols() && a.op == b.op;
  }
  return false;
}

Complex overlap(const PureState& a, const DetectorModel& gamma, const PureState& b) {
  using Kind = DetectorModel::Kind;
  if (const auto* ga = std::get_if<GaussianState>(&a)) {
    const auto* gb = std::get_if<GaussianState>(&b);
    if (gb == nullptr) incompatible("Gaussian paired with finite-rank state");
    if (ga->pol != gb->pol) return 0.0;
    switch (gamma.kind) {
      case Kind::kIdeal:
        return gaussian_overlap(*ga, *gb, 0.0, 0.0);
      case Kind::kFlat:
        return gamma.efficiency * gamma.pol_efficiency[ga->pol] *
               gaussian_overlap(*ga, *gb, 0.0, 0.0);
      case Kind::kGaussianBand:
        return gamma.peak * gamma.pol_efficiency[ga->pol] *
               gaussian_overlap(*ga, *gb, gamma.center, gamma.width);
      case Kind::kMatrix:
        incompatible("matrix detector applied to a Gaussian state");
    }
  }
  const auto& fa = std::get<FiniteRankState>(a).coeffs;
  const auto* fb = std::get_if<FiniteRankState>(&b);
  if (fb == nullptr) incompatible("finite-rank paired with Gaussian state");
  if (fa.size() != fb->coeffs.size()) incompatible("finite-rank states of different dimension");
  switch (gamma.kind) {
    case Kind::kIdeal:
      return fa.dot(fb->coeffs);
    case Kind::kFlat:
      return gamma.efficiency * fa.dot(fb->coeffs);
    case Kind::kMatrix:
      if (gamma.op.rows() != fa.size() || gamma.op.cols() != fa.size()) {
        incompatible("matrix detector dimension differs from state dimension");
      }
      return fa.dot(gamma.op * fb->coeffs);
    case Kind::kGaussianBand:
      incompatible("Gaussian band detector applied to a finite-rank state");
  }
  return 0.0;
}

Complex overlap(const PureState& a, const PureState& b) {
  return overlap(a, DetectorModel::ideal(), b);
}

CMatrix gram_matrix(const std::vector<PureState>& states, const DetectorModel& gamma) {
  const auto k = static_cast<Eigen::Index>(states.size());
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    g(i, i) = overlap(states[i], gamma, states[i]).real();
    for (Eigen::Index j = i + 1; j < k; ++j) {
      g(i, j) = overlap(states[i], gamma, states[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

void validate_state(const PureState& s) {
  if (const auto* g = std::get_if<GaussianState>(&s)) {
    if (!(g->delta > 0.0) || !std::isfinite(g->delta)) {
      throw ValidationError("Gaussian state needs a positive finite bandwidth");
    }
    if (g->pol != 0 && g->pol != 1) throw ValidationError("polarization must be 0 or 1");
    return;
  }
  const auto& c = std::get<FiniteRankState>(s).coeffs;
  if (c.size() == 0) throw ValidationError("finite-rank state has no coefficients");
  if (std::abs(c.squaredNorm() - 1.0) > 1e-8) {
    throw ValidationError("finite-rank state is not normalized (norm^2 = " +
                          std::to_string(c.squaredNorm()) + ")");
  }
}

void validate_detector(const DetectorModel& d) {
  using Kind = DetectorModel::Kind;
  for (double e : d.pol_efficiency) {
    if (e < 0.0 || e > 1.0) throw ValidationError("polarization efficiency outside [0,1]");
  }
  switch (d.kind) {
    case Kind::kIdeal:
      return;
    case Kind::kFlat:
      if (d.efficiency < 0.0 || d.efficiency > 1.0) {
        throw ValidationError("flat detector efficiency outside [0,1]");
      }
      return;
    case Kind::kGaussianBand:
      if (!(d.width > 0.0)) throw ValidationError("Gaussian band needs positive width");
      if (d.peak < 0.0 || d.peak > 1.0) throw ValidationError("Gaussian band peak outside [0,1]");
      return;
    case Kind::kMatrix: {
      if (d.op.rows() != d.op.cols() || d.op.rows() == 0) {
        throw ValidationError("detector matrix must be square and non-empty");
      }
      if ((d.op - d.op.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("detector matrix is not Hermitian");
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> es(d.op, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -1e-10 || es.eigenvalues().maxCoeff() > 1.0 + 1e-10) {
        throw ValidationError("detector matrix eigenvalues outside [0,1]");
      }
      return;
    }
  }
}

MixedState MixedState::pure(PureState s) { return MixedState{{Term{1.0, std::move(s)}}}; }

QuadratureRule gauss_hermite(int nodes) {
  if (nodes < 1) throw ArgumentError("quadrature needs at least one node");
  // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite polynomials.
  RMatrix jacobi = RMatrix::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(jacobi);
  QuadratureRule rule{es.eigenvalues(), es.eigenvectors().row(0).transpose().cwiseAbs2()};
  rule.weights /= rule.weights.sum();
  // The spectrum is symmetric; enforce it exactly.
  for (int i = 0; i < nodes / 2; ++i) {
    const double x = 0.5 * (rule.nodes(nodes - 1 - i) - rule.nodes(i));
    const double w = 0.5 * (rule.weights(i) + rule.weights(nodes - 1 - i));
    rule.nodes(i) = -x;
    rule.nodes(nodes - 1 - i) = x;
    rule.weights(i) = rule.weights(nodes - 1 - i) = w;
  }
  if (nodes % 2 == 1) rule.nodes(nodes / 2) = 0.0;
  return rule;
}

MixedState fluctuating(const std::function<PureState(double)>& family, double mean,
                       double stddev, int nodes) {
  if (stddev < 0.0) throw ArgumentError("negative standard deviation");
  if (stddev == 0.0) return MixedState::pure(family(mean));
  const QuadratureRule rule = gauss_hermite(nodes);
  MixedState out;
  for (int i = 0; i < nodes; ++i) {
    out.terms.push_back({rule.weights(i), family(mean + stddev * rule.nodes(i))});
  }
  return out;
}

MixedState jittered_arrival(const GaussianState& base, double sigma_t, int nodes) {
  return fluctuating(
      [&](double t) {
        GaussianState s = base;
        s.t = t;
        return PureState(s);
      },
      base.t, sigma_t, nodes);
}

namespace {

// Hermitian PSD matrix D^{1/2} G D^{1/2} whose spectrum equals that of
// sqrt(Gamma) rho sqrt(Gamma).
CMatrix weighted_gram(const MixedState& rho, const DetectorModel& gamma) {
  std::vector<PureState> states;
  RVector w(rho.size());
  for (int i = 0; i < rho.size(); ++i) {
    states.push_back(rho.terms[i].state);
    w(i) = std::sqrt(rho.terms[i].weight);
  }
  return w.asDiagonal() * gram_matrix(states, gamma) * w.asDiagonal();
}

}  // namespace

double gk_trace(const MixedState& rho, const DetectorModel& gamma, int k) {
  if (k < 1) throw ArgumentError("g_k needs k >= 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(weighted_gram(rho, gamma), Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (double lambda : es.eigenvalues()) total += std::pow(std::max(lambda, 0.0), k);
  return total;
}

double detection_probability(const MixedState& rho, const DetectorModel& gamma) {
  double total = 0.0;
  for (const auto& term : rho.terms) {
    total += term.weight * overlap(term.state, gamma, term.state).real();
  }
  return total;
}

GramFactor factor_gram(const CMatrix& gram) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  const RVector& lambda = es.eigenvalues();
  const double top = lambda.size() > 0 ? lambda.maxCoeff() : 0.0;
  const double cutoff = kRankTolerance * top;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i) {
    if (top > 0.0 && lambda(i) > cutoff) keep.push_back(i);
  }
  GramFactor f;
  f.coefficients.resize(static_cast<Eigen::Index>(keep.size()), gram.cols());
  f.singular_values.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    f.singular_values(row) = std::sqrt(lambda(keep[r]));
    f.coefficients.row(row) =
        f.singular_values(row) * es.eigenvectors().col(keep[r]).adjoint();
  }
  return f;
}

GramFactor orthonormalize(const std::vector<PureState>& states, const DetectorModel& gamma) {
  return factor_gram(gram_matrix(states, gamma));
}

}  // namespace indist
