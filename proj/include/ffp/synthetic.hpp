#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffp/dataset.hpp"

namespace ffp {

/// Seeded separable activation data: class c's mean is `signal` on the
/// coordinates [c*block, (c+1)*block) and 0 elsewhere, plus i.i.d. Gaussian
/// noise on every coordinate.
struct SyntheticSpec {
  std::size_t classes = 7;
  std::size_t dimension = 768;
  std::size_t block = 40;
  double signal = 1.0;
  double noise_std = 0.1;
  std::size_t train_per_class = 100;
  std::size_t test_per_class = 20;
  std::uint64_t seed = 42;
};

struct SyntheticData {
  ActivationDataset train;
  ActivationDataset test;
};

// Labels: the seven emotion names when classes == 7, otherwise "class<i>".
std::vector<std::string> synthetic_labels(std::size_t classes);

SyntheticData make_separable(const SyntheticSpec& spec);

}  // namespace ffp
