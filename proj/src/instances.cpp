#include "indist/instances.hpp"

#include <algorithm>
#include <random>

#include "indist/network.hpp"

namespace indist {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex gaussian() {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng_);
    return {re, normal(rng_)};
  }
  std::uint64_t seed() { return rng_(); }

  GaussianState packet() {
    GaussianState s{uniform(-1.0, 1.0), uniform(0.5, 1.5), uniform(-1.0, 1.0), 0};
    if (uniform(0.0, 1.0) < 0.2) s.pol = 1;
    return s;
  }

  CVector unit_vector(int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian();
    return v.normalized();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

RandomInstance random_instance(std::uint64_t seed, const InstanceOptions& options) {
  Draw draw(seed);
  RandomInstance out;
  Experiment& e = out.experiment;
  const int modes = draw.integer(2, options.max_modes);
  const int photons = draw.integer(1, std::min(options.max_photons, modes));
  e.network = random_unitary(modes, draw.seed());
  e.input.assign(modes, 0);
  std::vector<int> slots(modes);
  for (int i = 0; i < modes; ++i) slots[i] = i;
  for (int i = 0; i < photons; ++i) std::swap(slots[i], slots[draw.integer(i, modes - 1)]);
  for (int i = 0; i < photons; ++i) e.input[slots[i]] = 1;

  const int photon_kind = draw.integer(0, 2);
  const int rank = 3;
  for (int i = 0; i < photons; ++i) {
    switch (photon_kind) {
      case 0:
        e.photons.push_back(MixedState::pure(draw.packet()));
        break;
      case 1:
        e.photons.push_back(jittered_arrival(draw.packet(), draw.uniform(0.2, 1.5), photons == 4 ? 2 : 3));
        break;
      default:
        e.photons.push_back(MixedState::pure(FiniteRankState{draw.unit_vector(rank)}));
        break;
    }
  }
  out.photon_kind = photon_kind == 0 ? "gaussian" : photon_kind == 1 ? "mixed" : "finite-rank";

  const int detector_kind = draw.integer(0, 2);
  e.detectors.clear();
  for (int mode = 0; mode < modes; ++mode) {
    switch (detector_kind) {
      case 0:
        e.detectors.push_back(DetectorModel::ideal());
        break;
      case 1:
        e.detectors.push_back(DetectorModel::flat(draw.uniform(0.3, 1.0)));
        break;
      default:
        if (photon_kind == 2) {
          CMatrix z(rank, rank);
          for (int i = 0; i < rank; ++i) {
            for (int j = 0; j < rank; ++j) z(i, j) = draw.gaussian();
          }
          Eigen::HouseholderQR<CMatrix> qr(z);
          const CMatrix v = qr.householderQ() * CMatrix::Identity(rank, rank);
          RVector eig(rank);
          for (int i = 0; i < rank; ++i) eig(i) = draw.uniform(0.0, 1.0);
          e.detectors.push_back(DetectorModel::matrix(v * eig.asDiagonal() * v.adjoint()));
        } else {
          e.detectors.push_back(DetectorModel::gaussian_band(draw.uniform(-1.0, 1.0),
                                                             draw.uniform(0.5, 2.0),
                                                             draw.uniform(0.5, 1.0)));
        }
        break;
    }
  }
  out.detector_kind = detector_kind == 0   ? "ideal"
                      : detector_kind == 1 ? "flat"
                      : photon_kind == 2   ? "matrix"
                                           : "gaussianBand";
  return out;
}

}  // namespace indist
