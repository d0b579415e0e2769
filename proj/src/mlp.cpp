#include "dae/mlp.hpp"

#include <cmath>

#include "dae/error.hpp"

namespace dae {

namespace {

Tensor affine(const Tensor& x, const DenseLayer& layer) {
  Tensor z = matmul_a_bt(x, layer.weight);
  const std::size_t out = layer.bias.size();
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t j = 0; j < out; ++j) z.at(i, j) += layer.bias[j];
  }
  return z;
}

Tensor hidden_forward(const MlpSpec& spec, const Tensor& z) {
  return spec.hidden == HiddenActivation::relu ? relu(z) : leaky_relu(z, spec.leaky_slope);
}

Tensor hidden_derivative(const MlpSpec& spec, const Tensor& z) {
  return spec.hidden == HiddenActivation::relu ? relu_derivative(z)
                                               : leaky_relu_derivative(z, spec.leaky_slope);
}

void check_shapes(const Mlp& net) {
  const auto& sizes = net.spec.layer_sizes;
  if (net.params.layers.size() != net.spec.layer_count()) {
    throw ShapeError("mlp: parameter layer count does not match spec");
  }
  for (std::size_t l = 0; l < net.params.layers.size(); ++l) {
    const auto& layer = net.params.layers[l];
    if (layer.weight.shape() != Shape{sizes[l + 1], sizes[l]} ||
        layer.bias.shape() != Shape{sizes[l + 1]}) {
      throw ShapeError("mlp: layer " + std::to_string(l) + " parameters have shapes " +
                       shape_to_string(layer.weight.shape()) + " / " +
                       shape_to_string(layer.bias.shape()));
    }
  }
}

}  // namespace

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2) throw ArgumentError("MlpSpec: need at least two layer sizes");
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw ArgumentError("MlpSpec: layer sizes must be positive");
  }
  if (hidden == HiddenActivation::leaky_relu && !(leaky_slope >= 0.0 && leaky_slope < 1.0)) {
    throw ArgumentError("MlpSpec: leaky slope must lie in [0, 1)");
  }
}

MlpParams MlpParams::zeros_like(const MlpSpec& spec) {
  MlpParams p;
  for (std::size_t l = 0; l < spec.layer_count(); ++l) {
    p.layers.push_back({Tensor({spec.layer_sizes[l + 1], spec.layer_sizes[l]}),
                        Tensor({spec.layer_sizes[l + 1]})});
  }
  return p;
}

bool MlpParams::all_finite() const {
  for (const auto& layer : layers) {
    if (!layer.weight.all_finite() || !layer.bias.all_finite()) return false;
  }
  return true;
}

std::vector<Tensor*> MlpParams::tensors() {
  std::vector<Tensor*> out;
  for (auto& layer : layers) {
    out.push_back(&layer.weight);
    out.push_back(&layer.bias);
  }
  return out;
}

std::vector<const Tensor*> MlpParams::tensors() const {
  std::vector<const Tensor*> out;
  for (const auto& layer : layers) {
    out.push_back(&layer.weight);
    out.push_back(&layer.bias);
  }
  return out;
}

std::vector<std::string> MlpParams::names(const std::string& prefix) const {
  std::vector<std::string> out;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string base = prefix + ".layer" + std::to_string(l);
    out.push_back(base + ".weight");
    out.push_back(base + ".bias");
  }
  return out;
}

void accumulate(MlpParams& into, const MlpParams& other) {
  auto dst = into.tensors();
  const auto src = other.tensors();
  if (dst.size() != src.size()) throw ShapeError("accumulate: layer counts differ");
  for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = add(*dst[i], *src[i]);
}

MlpParams init_mlp(const MlpSpec& spec, Prng& rng) {
  spec.validate();
  MlpParams p = MlpParams::zeros_like(spec);
  for (std::size_t l = 0; l < spec.layer_count(); ++l) {
    const double fan_in = static_cast<double>(spec.layer_sizes[l]);
    const double fan_out = static_cast<double>(spec.layer_sizes[l + 1]);
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    p.layers[l].weight = sample_uniform(rng, p.layers[l].weight.shape(), -bound, bound);
  }
  return p;
}

Mlp make_mlp(const MlpSpec& spec, Prng& rng) { return {spec, init_mlp(spec, rng)}; }

ForwardResult mlp_forward(const Mlp& net, const Tensor& x, bool train_mode, double dropout_rate,
                          Prng* rng) {
  check_shapes(net);
  if (x.rank() != 2 || x.cols() != net.spec.input_dim()) {
    throw ShapeError("mlp_forward: input " + shape_to_string(x.shape()) + " does not have " +
                     std::to_string(net.spec.input_dim()) + " columns");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ArgumentError("mlp_forward: dropout_rate must lie in [0, 1)");
  }
  const bool use_dropout = train_mode && dropout_rate > 0.0;
  if (use_dropout && rng == nullptr) {
    throw ArgumentError("mlp_forward: dropout in train mode needs a random source");
  }

  ForwardResult result;
  ForwardCache& cache = result.cache;
  const std::size_t n_layers = net.params.layers.size();
  Tensor activation = x;
  for (std::size_t l = 0; l < n_layers; ++l) {
    Tensor z = affine(activation, net.params.layers[l]);
    cache.layer_inputs.push_back(std::move(activation));
    if (l + 1 == n_layers) {
      activation = net.spec.output == OutputActivation::sigmoid ? sigmoid(z) : z;
      cache.pre_activations.push_back(std::move(z));
      break;
    }
    Tensor h = hidden_forward(net.spec, z);
    cache.pre_activations.push_back(std::move(z));
    Tensor mask;
    if (use_dropout) {
      mask = Tensor(h.shape());
      const double keep_scale = 1.0 / (1.0 - dropout_rate);
      for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = rng->uniform01() >= dropout_rate ? keep_scale : 0.0;
      }
      h = hadamard(h, mask);
    }
    cache.dropout_masks.push_back(std::move(mask));
    activation = std::move(h);
  }
  cache.output = activation;
  result.output = std::move(activation);
  return result;
}

Tensor mlp_predict(const Mlp& net, const Tensor& x) { return mlp_forward(net, x).output; }

BackwardResult mlp_backward(const Mlp& net, const ForwardCache& cache, const Tensor& grad_output) {
  const std::size_t n_layers = net.params.layers.size();
  if (cache.layer_inputs.size() != n_layers || cache.pre_activations.size() != n_layers ||
      cache.dropout_masks.size() + 1 != n_layers) {
    throw ContractError("mlp_backward: cache was produced by a network with a different depth");
  }
  for (std::size_t l = 0; l < n_layers; ++l) {
    const auto& w = net.params.layers[l].weight;
    if (cache.layer_inputs[l].cols() != w.cols() || cache.pre_activations[l].cols() != w.rows()) {
      throw ContractError("mlp_backward: cache layer " + std::to_string(l) +
                          " does not match parameter shapes");
    }
  }
  if (grad_output.shape() != cache.output.shape()) {
    throw ContractError("mlp_backward: grad_output " + shape_to_string(grad_output.shape()) +
                        " does not match cached output " + shape_to_string(cache.output.shape()));
  }

  BackwardResult result{MlpParams::zeros_like(net.spec), Tensor()};
  Tensor grad = grad_output;
  for (std::size_t l = n_layers; l-- > 0;) {
    Tensor dz;
    if (l + 1 == n_layers) {
      dz = net.spec.output == OutputActivation::sigmoid
               ? hadamard(grad, sigmoid_derivative(cache.output))
               : grad;
    } else {
      if (cache.dropout_masks[l].size() != 0) grad = hadamard(grad, cache.dropout_masks[l]);
      dz = hadamard(grad, hidden_derivative(net.spec, cache.pre_activations[l]));
    }
    result.grads.layers[l].weight = matmul_at_b(dz, cache.layer_inputs[l]);
    result.grads.layers[l].bias = column_sums(dz);
    grad = matmul(dz, net.params.layers[l].weight);
  }
  result.grad_input = std::move(grad);
  return result;
}

}  // namespace dae
