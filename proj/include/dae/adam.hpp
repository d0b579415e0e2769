#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dae/tensor.hpp"

namespace dae {

struct AdamConfig {
  double alpha = 0.0002;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First/second moments for a fixed list of parameter tensors.
struct AdamState {
  AdamConfig config;
  std::vector<std::string> names;
  std::vector<Tensor> first_moment;
  std::vector<Tensor> second_moment;
  std::uint64_t step = 0;

  AdamState() = default;
  AdamState(const std::vector<const Tensor*>& params, std::vector<std::string> param_names,
            AdamConfig cfg = {});
};

/// One bias-corrected Adam update, in place. Throws NumericError naming the first parameter
/// whose gradient is not finite; nothing is modified in that case.
void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state);

}  // namespace dae
