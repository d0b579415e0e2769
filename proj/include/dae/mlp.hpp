#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dae/random.hpp"
#include "dae/tensor.hpp"

namespace dae {

enum class HiddenActivation { relu, leaky_relu };
enum class OutputActivation { sigmoid, identity };

struct MlpSpec {
  std::vector<std::size_t> layer_sizes;  // input dimension first
  HiddenActivation hidden = HiddenActivation::relu;
  double leaky_slope = 0.2;  // used only by leaky_relu
  OutputActivation output = OutputActivation::sigmoid;

  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
  std::size_t layer_count() const { return layer_sizes.size() - 1; }

  /// Throws ArgumentError unless there are >= 2 positive sizes and a valid slope.
  void validate() const;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

struct DenseLayer {
  Tensor weight;  // [out x in]
  Tensor bias;    // [out]

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Weights and biases of every layer. Also used as the container for their gradients.
struct MlpParams {
  std::vector<DenseLayer> layers;

  /// All-zero parameters shaped for `spec`.
  static MlpParams zeros_like(const MlpSpec& spec);

  bool all_finite() const;
  /// Tensors in declaration order: layer0.weight, layer0.bias, layer1.weight, ...
  std::vector<Tensor*> tensors();
  std::vector<const Tensor*> tensors() const;
  /// Names matching tensors(), prefixed: "<prefix>.layer0.weight".
  std::vector<std::string> names(const std::string& prefix) const;

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// into += other, tensor by tensor. Shapes must agree.
void accumulate(MlpParams& into, const MlpParams& other);

/// A network: architecture plus parameters.
struct Mlp {
  MlpSpec spec;
  MlpParams params;

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

/// Everything backward needs from a forward pass.
struct ForwardCache {
  std::vector<Tensor> layer_inputs;     // input to each layer (after dropout)
  std::vector<Tensor> pre_activations;  // affine outputs of each layer
  std::vector<Tensor> dropout_masks;    // per hidden layer; empty tensor when no dropout
  Tensor output;
};

struct ForwardResult {
  Tensor output;
  ForwardCache cache;
};

struct BackwardResult {
  MlpParams grads;
  Tensor grad_input;
};

/// Glorot-uniform weights, zero biases.
MlpParams init_mlp(const MlpSpec& spec, Prng& rng);
Mlp make_mlp(const MlpSpec& spec, Prng& rng);

/// Affine + activation per layer. In train mode with dropout_rate > 0, hidden activations are
/// dropped with probability dropout_rate and survivors scaled by 1/(1 - dropout_rate);
/// `rng` must then be non-null.
ForwardResult mlp_forward(const Mlp& net, const Tensor& x, bool train_mode = false,
                          double dropout_rate = 0.0, Prng* rng = nullptr);

/// Eval-mode forward without a cache.
Tensor mlp_predict(const Mlp& net, const Tensor& x);

/// Reverse-mode gradients of the forward map for upstream gradient `grad_output`.
/// Throws ContractError when the cache does not match the network or gradient shape.
BackwardResult mlp_backward(const Mlp& net, const ForwardCache& cache, const Tensor& grad_output);

}  // namespace dae
