#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dynembed::sgnsmath {

template <typename F>
inline F sigmoid(F x) {
    return F(1) / (F(1) + std::exp(-x));
}

template <typename F>
inline F dot(std::span<const F> a, std::span<const F> b) {
    F acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Objective for one training pair: log sigma(c.x) + sum_k log sigma(-c.n_k).
template <typename F>
F pair_objective(std::span<const F> center, std::span<const F> context,
                 std::span<const std::span<const F>> negatives) {
    F value = std::log(sigmoid(dot(center, context)));
    for (const auto& neg : negatives) value += std::log(sigmoid(-dot(center, neg)));
    return value;
}

// Gradient coefficients: the gradient w.r.t. an output row is coeff * center,
// and w.r.t. the center it is sum coeff_i * row_i. coeffs[0] belongs to the
// context, coeffs[1..] to the negatives.
template <typename F>
std::vector<F> pair_coefficients(std::span<const F> center, std::span<const F> context,
                                 std::span<const std::span<const F>> negatives) {
    std::vector<F> coeffs;
    coeffs.reserve(1 + negatives.size());
    coeffs.push_back(F(1) - sigmoid(dot(center, context)));
    for (const auto& neg : negatives) coeffs.push_back(-sigmoid(dot(center, neg)));
    return coeffs;
}

template <typename F>
struct PairGradients {
    std::vector<F> center;
    std::vector<F> context;
    std::vector<std::vector<F>> negatives;
};

template <typename F>
PairGradients<F> pair_gradients(std::span<const F> center, std::span<const F> context,
                                std::span<const std::span<const F>> negatives) {
    const std::size_t d = center.size();
    auto coeffs = pair_coefficients(center, context, negatives);

    PairGradients<F> g;
    g.center.assign(d, 0);
    g.context.assign(d, 0);
    g.negatives.assign(negatives.size(), std::vector<F>(d, 0));

    for (std::size_t i = 0; i < d; ++i) {
        g.center[i] += coeffs[0] * context[i];
        g.context[i] = coeffs[0] * center[i];
    }
    for (std::size_t k = 0; k < negatives.size(); ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            g.center[i] += coeffs[k + 1] * negatives[k][i];
            g.negatives[k][i] = coeffs[k + 1] * center[i];
        }
    }
    return g;
}

}  // namespace dynembed::sgnsmath
