#pragma once

#include <string>
#include <vector>

#include "tridrop/model.hpp"

namespace tridrop {

struct GradCheckResult {
    double max_error = 0.0;  // relative, with absolute fallback below 1e-6 magnitude
    std::size_t params_checked = 0;
    std::string worst_location;
};

// Compares backpropagated gradients against central finite differences,
// running the model's own kernels in double precision. Training masks are
// built once and held fixed across every probe. All parameters are checked
// when the model has fewer than `sample_cap`; otherwise `sample_cap` indices
// are drawn with the given seed.
//
// The error for one parameter is |bp - fd| / max(|bp|, |fd|), falling back to
// the absolute difference when both magnitudes are below 1e-6.
//
// Relu kinks: the derivative at 0 is defined as 0, so probes that push a
// pre-activation across 0 disagree with backprop by construction. Callers
// should use inputs/weights whose relu pre-activations are bounded away from
// 0 by a margin well above eps (the built-in catalog reseeds until that
// holds).
GradCheckResult gradcheck(const Model& m, const Matrix& x, const Matrix& target, LossKind loss,
                          double eps = 1e-3, std::size_t sample_cap = 2000,
                          std::uint64_t sample_seed = 0);

struct GradCheckCase {
    std::string name;
    Model model;
    Matrix x;
    Matrix target;
    double threshold;  // max acceptable gradcheck error
};

// Small-model catalog covering every layer kind, activation, and loss, plus
// triangular-dropout layers in the three batch regimes (B < n, B == n,
// B > n), stacked TriDrop layers, and a random-prefix mask. Linear+MSE
// entries carry a 1e-6 threshold, everything else 1e-3.
std::vector<GradCheckCase> gradcheck_catalog(std::uint64_t seed);

}  // namespace tridrop
