#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "miskit/graph.hpp"

namespace miskit {

struct NodeFeatures {
    std::vector<double> x;    // per-node scalar in (0, 1]
    double k_exponent = 1.0;  // range control: min feature is (1/2)^k
};

// Degree-based node feature initialization, favoring low-degree vertices:
// normalize degrees to [0,1] by min-max, then x_i = 1 / (d_norm_i + 1)^k.
// When all degrees are equal the normalized degree is taken as 0, so every
// x_i = 1 (the all-ones initialization; isolated vertices always get 1).
inline NodeFeatures degree_init(const Graph& g, double k_exponent = 1.0) {
    const int n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("degree_init: empty graph");
    if (!(k_exponent > 0.0)) throw std::invalid_argument("degree_init: k must be positive");
    NodeFeatures f;
    f.k_exponent = k_exponent;
    f.x.resize(static_cast<std::size_t>(n));
    const int d_min = g.min_degree();
    const int d_max = g.max_degree();
    if (d_min == d_max) {
        std::fill(f.x.begin(), f.x.end(), 1.0);
        return f;
    }
    const double span = static_cast<double>(d_max - d_min);
    for (int v = 0; v < n; ++v) {
        const double d_norm = (g.degree(v) - d_min) / span;
        f.x[static_cast<std::size_t>(v)] = std::pow(d_norm + 1.0, -k_exponent);
    }
    return f;
}

}  // namespace miskit
