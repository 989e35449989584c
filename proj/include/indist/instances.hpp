#ifndef INDIST_INSTANCES_HPP_
#define INDIST_INSTANCES_HPP_

#include <cstdint>
#include <string>

#include "indist/probability.hpp"

namespace indist {

struct InstanceOptions {
  int max_modes = 5;
  int max_photons = 4;
};

/// A reproducible random experiment with at most one photon per input mode.
struct RandomInstance {
  Experiment experiment;
  std::string photon_kind;    // "gaussian", "mixed" or "finite-rank"
  std::string detector_kind;  // "ideal", "flat", "gaussianBand" or "matrix"
};

/// Haar network, random photons (pure Gaussian, jittered arrival time or
/// finite rank) and per-mode random detectors of one kind. Jittered
/// photons use 3 quadrature nodes (2 when N = 4) to keep the ensemble small.
RandomInstance random_instance(std::uint64_t seed, const InstanceOptions& options = {});

}  // namespace indist

#endif  // INDIST_INSTANCES_HPP_
