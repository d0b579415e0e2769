#include "dae/adam.hpp"

#include <cmath>

#include "dae/error.hpp"

namespace dae {

AdamState::AdamState(const std::vector<const Tensor*>& params,
                     std::vector<std::string> param_names, AdamConfig cfg)
    : config(cfg), names(std::move(param_names)) {
  if (names.size() != params.size()) throw ArgumentError("AdamState: one name per parameter");
  for (const Tensor* p : params) {
    first_moment.emplace_back(p->shape());
    second_moment.emplace_back(p->shape());
  }
}

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw ShapeError("adam_step: parameter, gradient and state counts differ");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i]->shape() != grads[i]->shape() ||
        params[i]->shape() != state.first_moment[i].shape()) {
      throw ShapeError("adam_step: shape mismatch for " + state.names[i]);
    }
    if (!grads[i]->all_finite()) {
      throw NumericError("adam_step: non-finite gradient for " + state.names[i]);
    }
  }

  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto p = params[i]->data();
    auto g = grads[i]->data();
    auto m = state.first_moment[i].data();
    auto v = state.second_moment[i].data();
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[k] = c.beta1 * m[k] + (1.0 - c.beta1) * g[k];
      v[k] = c.beta2 * v[k] + (1.0 - c.beta2) * g[k] * g[k];
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      p[k] -= c.alpha * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace dae
