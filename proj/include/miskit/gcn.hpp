#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <json.hpp>

#include "miskit/graph.hpp"
#include "miskit/rng.hpp"

namespace miskit {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Self-loop-augmented symmetrically normalized adjacency operator
// A_hat = D^{-1/2} (A + I) D^{-1/2}, where D is the degree matrix of A + I.
// Entries: A_hat[i][j] = 1 / sqrt((d_i + 1)(d_j + 1)) for j adjacent to i
// or j = i; in particular A_hat[i][i] = 1 / (d_i + 1) > 0.
class NormalizedAdjacency {
public:
    explicit NormalizedAdjacency(const Graph& g)
        : mat_(g.num_vertices(), g.num_vertices()) {
        const int n = g.num_vertices();
        if (n < 1) throw std::invalid_argument("normalize_adjacency: empty graph");
        std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            inv_sqrt[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(g.degree(v) + 1.0);
        std::vector<Eigen::Triplet<double>> entries;
        entries.reserve(static_cast<std::size_t>(n) + 2 * g.num_edges());
        for (int v = 0; v < n; ++v) {
            const double s = inv_sqrt[static_cast<std::size_t>(v)];
            entries.emplace_back(v, v, s * s);
        }
        for (const auto& [u, v] : g.edges()) {
            const double w = inv_sqrt[static_cast<std::size_t>(u)] * inv_sqrt[static_cast<std::size_t>(v)];
            entries.emplace_back(u, v, w);
            entries.emplace_back(v, u, w);
        }
        mat_.setFromTriplets(entries.begin(), entries.end());
        mat_.makeCompressed();
    }

    int size() const { return static_cast<int>(mat_.rows()); }
    const Eigen::SparseMatrix<double>& matrix() const { return mat_; }

private:
    Eigen::SparseMatrix<double> mat_;
};

enum class HiddenActivation { Relu, Tanh, Identity };

inline std::string activation_name(HiddenActivation act) {
    switch (act) {
        case HiddenActivation::Relu: return "relu";
        case HiddenActivation::Tanh: return "tanh";
        case HiddenActivation::Identity: return "none";
    }
    throw std::logic_error("activation_name: bad enum");
}

inline HiddenActivation activation_from_name(const std::string& name) {
    if (name == "relu") return HiddenActivation::Relu;
    if (name == "tanh") return HiddenActivation::Tanh;
    if (name == "none") return HiddenActivation::Identity;
    throw std::invalid_argument("unknown activation: " + name);
}

// Two-layer graph convolution with a logistic head:
//   H1 = act(A_hat X W1),  p = logistic(A_hat H1 W2).
struct GcnModel {
    Eigen::MatrixXd w1;  // input_dim x hidden
    Eigen::MatrixXd w2;  // hidden x 1
    HiddenActivation hidden_act = HiddenActivation::Relu;
    std::uint64_t seed = 0;

    int input_dim() const { return static_cast<int>(w1.rows()); }
    int hidden() const { return static_cast<int>(w1.cols()); }
};

// Glorot-style uniform initialization, deterministic from the seed:
// entries drawn from [-b, b] with b = sqrt(6 / (fan_in + fan_out)),
// W1 first (row-major), then W2.
inline GcnModel init_params(int input_dim, int hidden, HiddenActivation act, std::uint64_t seed) {
    if (input_dim < 1) throw std::invalid_argument("init_params: input_dim must be >= 1");
    if (hidden < 1) throw std::invalid_argument("init_params: hidden must be >= 1");
    GcnModel model;
    model.hidden_act = act;
    model.seed = seed;
    model.w1.resize(input_dim, hidden);
    model.w2.resize(hidden, 1);
    Xoshiro256StarStar rng(seed);
    const double b1 = std::sqrt(6.0 / (input_dim + hidden));
    for (int r = 0; r < input_dim; ++r)
        for (int c = 0; c < hidden; ++c) model.w1(r, c) = (2.0 * rng.next_double() - 1.0) * b1;
    const double b2 = std::sqrt(6.0 / (hidden + 1));
    for (int r = 0; r < hidden; ++r) model.w2(r, 0) = (2.0 * rng.next_double() - 1.0) * b2;
    return model;
}

namespace detail {

inline Eigen::MatrixXd apply_activation(HiddenActivation act, const Eigen::MatrixXd& z) {
    switch (act) {
        case HiddenActivation::Relu: return z.cwiseMax(0.0);
        case HiddenActivation::Tanh: return z.array().tanh().matrix();
        case HiddenActivation::Identity: return z;
    }
    throw std::logic_error("apply_activation: bad enum");
}

inline Eigen::MatrixXd activation_grad(HiddenActivation act, const Eigen::MatrixXd& z,
                                       const Eigen::MatrixXd& h) {
    switch (act) {
        case HiddenActivation::Relu:
            return (z.array() > 0.0).cast<double>().matrix();
        case HiddenActivation::Tanh:
            return (1.0 - h.array().square()).matrix();
        case HiddenActivation::Identity:
            return Eigen::MatrixXd::Ones(z.rows(), z.cols());
    }
    throw std::logic_error("activation_grad: bad enum");
}

}  // namespace detail

struct ForwardCache {
    Eigen::MatrixXd ax;   // A_hat X
    Eigen::MatrixXd z1;   // A_hat X W1
    Eigen::MatrixXd h1;   // act(z1)
    Eigen::MatrixXd ah1;  // A_hat h1
    Eigen::VectorXd z2;   // A_hat h1 W2
    Eigen::VectorXd p;    // logistic(z2)
    const NormalizedAdjacency* adjacency = nullptr;
};

inline ForwardCache forward(const GcnModel& model, const NormalizedAdjacency& adjacency,
                            const Eigen::MatrixXd& features) {
    if (features.rows() != adjacency.size())
        throw std::invalid_argument("forward: feature rows must match vertex count");
    if (features.cols() != model.input_dim())
        throw std::invalid_argument("forward: feature columns must match model input_dim");
    ForwardCache cache;
    cache.adjacency = &adjacency;
    cache.ax = adjacency.matrix() * features;
    cache.z1 = cache.ax * model.w1;
    cache.h1 = detail::apply_activation(model.hidden_act, cache.z1);
    cache.ah1 = adjacency.matrix() * cache.h1;
    cache.z2 = cache.ah1 * model.w2;
    cache.p = (1.0 / (1.0 + (-cache.z2.array()).exp())).matrix();
    if (!cache.p.allFinite())
        throw NumericError("forward pass produced non-finite probabilities");
    return cache;
}

struct GcnGradients {
    Eigen::MatrixXd w1;
    Eigen::MatrixXd w2;
};

// Exact reverse-mode gradients through the two-layer architecture. The
// cache must come from a matching forward call.
inline GcnGradients backward(const GcnModel& model, const ForwardCache& cache,
                             const Eigen::VectorXd& dloss_dp) {
    if (dloss_dp.size() != cache.p.size())
        throw std::invalid_argument("backward: dloss_dp size mismatch");
    if (cache.adjacency == nullptr)
        throw std::invalid_argument("backward: cache missing adjacency");
    const Eigen::VectorXd dz2 =
        (dloss_dp.array() * cache.p.array() * (1.0 - cache.p.array())).matrix();
    GcnGradients grads;
    grads.w2 = cache.ah1.transpose() * dz2;
    const Eigen::MatrixXd dh1 = cache.adjacency->matrix() * (dz2 * model.w2.transpose());
    const Eigen::MatrixXd dz1 =
        (dh1.array() * detail::activation_grad(model.hidden_act, cache.z1, cache.h1).array())
            .matrix();
    grads.w1 = cache.ax.transpose() * dz1;
    return grads;
}

// Mean binary cross entropy with probabilities clamped to [eps, 1-eps];
// returns the loss together with dL/dp.
inline std::pair<double, Eigen::VectorXd> bce_loss(const Eigen::VectorXd& p,
                                                   const Eigen::VectorXd& y) {
    if (p.size() != y.size()) throw std::invalid_argument("bce_loss: size mismatch");
    if (p.size() == 0) throw std::invalid_argument("bce_loss: empty input");
    constexpr double eps = 1e-7;
    const Eigen::ArrayXd q = p.array().min(1.0 - eps).max(eps);
    const Eigen::ArrayXd ya = y.array();
    const double n = static_cast<double>(p.size());
    const double loss = -((ya * q.log()) + (1.0 - ya) * (1.0 - q).log()).sum() / n;
    const Eigen::VectorXd grad = ((q - ya) / (q * (1.0 - q) * n)).matrix();
    return {loss, grad};
}

// Adaptive-moment optimizer state; moment shapes match the model.
struct AdamState {
    Eigen::MatrixXd m_w1, v_w1, m_w2, v_w2;
    long long step = 0;
    double learning_rate = 1e-2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_model(const GcnModel& model, double lr) {
        AdamState s;
        s.learning_rate = lr;
        s.m_w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
        s.v_w1 = s.m_w1;
        s.m_w2 = Eigen::MatrixXd::Zero(model.w2.rows(), model.w2.cols());
        s.v_w2 = s.m_w2;
        return s;
    }
};

inline void optimizer_step(GcnModel& model, const GcnGradients& grads, AdamState& state) {
    if (!grads.w1.allFinite() || !grads.w2.allFinite())
        throw NumericError("optimizer_step: non-finite gradient");
    if (grads.w1.rows() != model.w1.rows() || grads.w1.cols() != model.w1.cols() ||
        grads.w2.rows() != model.w2.rows() || grads.w2.cols() != model.w2.cols())
        throw std::invalid_argument("optimizer_step: gradient shape mismatch");
    ++state.step;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    auto update = [&](Eigen::MatrixXd& w, const Eigen::MatrixXd& g, Eigen::MatrixXd& m,
                      Eigen::MatrixXd& v) {
        m = state.beta1 * m + (1.0 - state.beta1) * g;
        v = state.beta2 * v + (1.0 - state.beta2) * g.array().square().matrix();
        w.array() -=
            state.learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + state.epsilon);
    };
    update(model.w1, grads.w1, state.m_w1, state.v_w1);
    update(model.w2, grads.w2, state.m_w2, state.v_w2);
}

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON model document; weights stored row-major. nlohmann emits
// shortest round-trip decimal for doubles, so save/load is value-exact.
inline nlohmann::json model_to_json(const GcnModel& model,
                                    const nlohmann::json& metadata = nlohmann::json::object()) {
    std::vector<double> w1_flat, w2_flat;
    w1_flat.reserve(static_cast<std::size_t>(model.w1.size()));
    for (int r = 0; r < model.w1.rows(); ++r)
        for (int c = 0; c < model.w1.cols(); ++c) w1_flat.push_back(model.w1(r, c));
    for (int r = 0; r < model.w2.rows(); ++r) w2_flat.push_back(model.w2(r, 0));
    return nlohmann::json{{"format_version", kModelFormatVersion},
                          {"input_dim", model.input_dim()},
                          {"hidden", model.hidden()},
                          {"activation", activation_name(model.hidden_act)},
                          {"w1", w1_flat},
                          {"w2", w2_flat},
                          {"metadata", metadata}};
}

inline std::pair<GcnModel, nlohmann::json> model_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kModelFormatVersion)
        throw std::runtime_error("model file: unsupported format_version");
    const int input_dim = j.at("input_dim").get<int>();
    const int hidden = j.at("hidden").get<int>();
    if (input_dim < 1 || hidden < 1) throw std::runtime_error("model file: bad dimensions");
    GcnModel model;
    model.hidden_act = activation_from_name(j.at("activation").get<std::string>());
    const auto w1 = j.at("w1").get<std::vector<double>>();
    const auto w2 = j.at("w2").get<std::vector<double>>();
    if (w1.size() != static_cast<std::size_t>(input_dim) * static_cast<std::size_t>(hidden) ||
        w2.size() != static_cast<std::size_t>(hidden))
        throw std::runtime_error("model file: weight size mismatch");
    model.w1.resize(input_dim, hidden);
    for (int r = 0; r < input_dim; ++r)
        for (int c = 0; c < hidden; ++c)
            model.w1(r, c) = w1[static_cast<std::size_t>(r) * static_cast<std::size_t>(hidden) +
                                static_cast<std::size_t>(c)];
    model.w2.resize(hidden, 1);
    for (int r = 0; r < hidden; ++r) model.w2(r, 0) = w2[static_cast<std::size_t>(r)];
    nlohmann::json metadata = j.value("metadata", nlohmann::json::object());
    return {std::move(model), std::move(metadata)};
}

}  // namespace miskit
