#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cdpr {

// Fully connected net: tanh on every hidden layer, linear output.
//
// Parameter vector layout (flatten/unflatten contract): for each layer in
// order, the weight matrix (out x in) in row-major order, then the bias
// (out). Total length = sum over layers of (in * out + out).
struct MlpSpec {
    int input_dim = 0;
    std::vector<int> hidden{64, 64};
    int output_dim = 0;

    int layer_count() const { return static_cast<int>(hidden.size()) + 1; }
    // (out, in) per layer.
    std::vector<std::pair<int, int>> layer_shapes() const;
    int param_count() const;
};

struct MlpCache {
    // activations[0] is the input; activations[k] is the output of layer k-1.
    std::vector<Eigen::VectorXd> activations;
};

struct MlpGradients {
    Eigen::VectorXd param_grad; // same layout as the parameter vector
    Eigen::VectorXd input_grad;
};

Eigen::VectorXd mlp_forward(const MlpSpec& spec, const Eigen::VectorXd& params,
                            const Eigen::VectorXd& input, MlpCache* cache = nullptr);

// Reverse-mode: gradient of dot(output, output_grad) with respect to the
// parameters and the input. `cache` must come from mlp_forward on the same
// (params, input).
MlpGradients mlp_backward(const MlpSpec& spec, const Eigen::VectorXd& params,
                          const MlpCache& cache, const Eigen::VectorXd& output_grad);

// Forward-mode: directional derivative of the output along `param_tangent`
// (input held fixed).
Eigen::VectorXd mlp_jvp(const MlpSpec& spec, const Eigen::VectorXd& params,
                        const MlpCache& cache, const Eigen::VectorXd& param_tangent);

} // namespace cdpr
