#include "cdpr/mlp.hpp"

#include "cdpr/errors.hpp"

namespace cdpr {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using WeightMap = Eigen::Map<const RowMajor>;
using MutWeightMap = Eigen::Map<RowMajor>;

} // namespace

std::vector<std::pair<int, int>> MlpSpec::layer_shapes() const {
    std::vector<std::pair<int, int>> shapes;
    int in = input_dim;
    for (int h : hidden) {
        shapes.emplace_back(h, in);
        in = h;
    }
    shapes.emplace_back(output_dim, in);
    return shapes;
}

int MlpSpec::param_count() const {
    int n = 0;
    for (const auto& [out, in] : layer_shapes()) n += out * in + out;
    return n;
}

Eigen::VectorXd mlp_forward(const MlpSpec& spec, const Eigen::VectorXd& params,
                            const Eigen::VectorXd& input, MlpCache* cache) {
    if (input.size() != spec.input_dim) {
        throw DimensionMismatch("mlp input has dim " + std::to_string(input.size()) +
                                ", expected " + std::to_string(spec.input_dim));
    }
    if (params.size() != spec.param_count()) {
        throw DimensionMismatch("mlp params have length " + std::to_string(params.size()) +
                                ", expected " + std::to_string(spec.param_count()));
    }

    const auto shapes = spec.layer_shapes();
    if (cache) {
        cache->activations.clear();
        cache->activations.push_back(input);
    }

    Eigen::VectorXd h = input;
    int offset = 0;
    for (size_t k = 0; k < shapes.size(); ++k) {
        const auto [out, in] = shapes[k];
        WeightMap W(params.data() + offset, out, in);
        offset += out * in;
        Eigen::Map<const Eigen::VectorXd> b(params.data() + offset, out);
        offset += out;

        Eigen::VectorXd z = W * h + b;
        h = (k + 1 < shapes.size()) ? z.array().tanh().matrix() : z;
        if (cache) cache->activations.push_back(h);
    }
    return h;
}

MlpGradients mlp_backward(const MlpSpec& spec, const Eigen::VectorXd& params,
                          const MlpCache& cache, const Eigen::VectorXd& output_grad) {
    const auto shapes = spec.layer_shapes();
    if (output_grad.size() != spec.output_dim) {
        throw DimensionMismatch("output_grad has dim " + std::to_string(output_grad.size()) +
                                ", expected " + std::to_string(spec.output_dim));
    }
    if (cache.activations.size() != shapes.size() + 1) {
        throw DimensionMismatch("stale mlp cache");
    }

    MlpGradients grads;
    grads.param_grad = Eigen::VectorXd::Zero(spec.param_count());

    // Parameter offsets per layer.
    std::vector<int> offsets(shapes.size());
    int offset = 0;
    for (size_t k = 0; k < shapes.size(); ++k) {
        offsets[k] = offset;
        offset += shapes[k].first * shapes[k].second + shapes[k].first;
    }

    Eigen::VectorXd delta = output_grad; // dL/dz for the current layer
    for (int k = static_cast<int>(shapes.size()) - 1; k >= 0; --k) {
        const auto [out, in] = shapes[k];
        const Eigen::VectorXd& layer_input = cache.activations[k];

        MutWeightMap dW(grads.param_grad.data() + offsets[k], out, in);
        dW = delta * layer_input.transpose();
        Eigen::Map<Eigen::VectorXd> db(grads.param_grad.data() + offsets[k] + out * in, out);
        db = delta;

        WeightMap W(params.data() + offsets[k], out, in);
        Eigen::VectorXd upstream = W.transpose() * delta;
        if (k > 0) {
            // Input of layer k is the tanh output of layer k-1.
            upstream.array() *= 1.0 - cache.activations[k].array().square();
        }
        delta = upstream;
    }
    grads.input_grad = delta;
    return grads;
}

Eigen::VectorXd mlp_jvp(const MlpSpec& spec, const Eigen::VectorXd& params,
                        const MlpCache& cache, const Eigen::VectorXd& param_tangent) {
    const auto shapes = spec.layer_shapes();
    if (param_tangent.size() != spec.param_count()) {
        throw DimensionMismatch("param_tangent has wrong length");
    }
    if (cache.activations.size() != shapes.size() + 1) {
        throw DimensionMismatch("stale mlp cache");
    }

    Eigen::VectorXd dh = Eigen::VectorXd::Zero(spec.input_dim);
    int offset = 0;
    for (size_t k = 0; k < shapes.size(); ++k) {
        const auto [out, in] = shapes[k];
        WeightMap W(params.data() + offset, out, in);
        WeightMap dW(param_tangent.data() + offset, out, in);
        offset += out * in;
        Eigen::Map<const Eigen::VectorXd> db(param_tangent.data() + offset, out);
        offset += out;

        const Eigen::VectorXd& layer_input = cache.activations[k];
        Eigen::VectorXd dz = dW * layer_input + W * dh + db;
        if (k + 1 < shapes.size()) {
            const Eigen::VectorXd& h = cache.activations[k + 1];
            dh = (dz.array() * (1.0 - h.array().square())).matrix();
        } else {
            dh = dz;
        }
    }
    return dh;
}

} // namespace cdpr
