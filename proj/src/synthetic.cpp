#include "ffp/synthetic.hpp"

#include <random>

#include "ffp/error.hpp"

namespace ffp {

std::vector<std::string> synthetic_labels(std::size_t classes) {
  if (classes == 7) {
    return {"anger",   "disgust", "fear",    "happiness",
            "neutral", "sadness", "surprise"};
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) {
    labels.push_back("class" + std::to_string(c));
  }
  return labels;
}

SyntheticData make_separable(const SyntheticSpec& spec) {
  if (spec.classes == 0 || spec.block == 0) {
    fail(ErrorKind::kParameter, "synthetic data needs classes and block >= 1");
  }
  if (spec.classes * spec.block > spec.dimension) {
    fail(ErrorKind::kParameter, "class blocks do not fit in the dimension");
  }
  if (!(spec.noise_std >= 0.0)) {
    fail(ErrorKind::kParameter, "noise std must be non-negative");
  }
  const auto labels = synthetic_labels(spec.classes);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, spec.noise_std);

  SyntheticData data{{spec.dimension, {}}, {spec.dimension, {}}};
  auto draw = [&](std::size_t c, const std::string& id) {
    LabeledVector v{id, labels[c], std::vector<double>(spec.dimension)};
    for (std::size_t d = 0; d < spec.dimension; ++d) {
      const bool active = d >= c * spec.block && d < (c + 1) * spec.block;
      v.values[d] = (active ? spec.signal : 0.0) + noise(rng);
    }
    return v;
  };
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t i = 0; i < spec.train_per_class; ++i) {
      data.train.instances.push_back(
          draw(c, "train-" + labels[c] + "-" + std::to_string(i)));
    }
    for (std::size_t i = 0; i < spec.test_per_class; ++i) {
      data.test.instances.push_back(
          draw(c, "test-" + labels[c] + "-" + std::to_string(i)));
    }
  }
  return data;
}

}  // namespace ffp
