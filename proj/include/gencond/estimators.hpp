#pragma once

#include <functional>

#include "gencond/cond.hpp"

namespace gencond {

struct EstimatorConfig {
    double delta = 0.01;    // bracket slack: stop when alpha2 <= (1+delta) alpha1
    double epsilon = 0.001; // certificate failure probability
    int k = 3;              // SSCE sample count
    std::uint64_t seed = 1;
    int max_iter = 0;       // 0 = operator dimension
};

struct ProbBracket {
    double alpha1 = 0.0;  // guaranteed lower bound on the largest eigenvalue
    double alpha2 = 0.0;  // probabilistic upper bound
    bool converged = false;
    int iterations = 0;
};

struct NormEstimate {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double value = 0.0;  // sqrt((alpha1+alpha2)/2) * ||[A,C]||_F / ||Cd||_F
    bool converged = false;
    int iterations = 0;
};

// Lanczos bracket (alpha1, alpha2) for the largest eigenvalue of a symmetric
// PSD operator: alpha1 is the top Ritz value (certain lower bound), alpha2
// the polynomial-certificate upper bound holding with probability >= 1-epsilon
// over the random start vector.
ProbBracket prob_spectral_norm(const std::function<Vec(const Vec&)>& apply,
                               Eigen::Index dim, double delta, double epsilon,
                               int max_iter, Rng& rng);

NormEstimate estimate_normwise_probabilistic(const GenInvBundle& b,
                                             const ProblemPair& pair,
                                             const EstimatorConfig& cfg);

// Small-sample estimate of the normwise condition number from k orthonormal
// probes of V. `compat_sigma` switches the quadratic form to the variant with
// G A^T A G in place of the ||Z||^2 scalar and (Cd Cd^T)^2 in the tail term,
// kept for comparison only.
double estimate_normwise_ssce(const GenInvBundle& b, const ProblemPair& pair,
                              const EstimatorConfig& cfg, bool compat_sigma = false);

struct MixedComponentwiseEstimate {
    double mixed = 0.0;
    double componentwise = 0.0;
};

MixedComponentwiseEstimate estimate_mixed_componentwise_ssce(const GenInvBundle& b,
                                                             const ProblemPair& pair,
                                                             const EstimatorConfig& cfg);

// sqrt(2 / (pi (j - 1/2))): expected |first coordinate| factor on S_{j-1}.
double wallis_factor(Eigen::Index j);

} // namespace gencond
