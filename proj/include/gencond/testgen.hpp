#pragma once

#include "gencond/geninv.hpp"

namespace gencond {

enum class SvMode { geometric, arithmetic };

struct GenSpec {
    Eigen::Index p = 0, q = 0, n = 0, s = 0;
    double l1 = 0.0, l2 = 0.0;   // kappa targets n^l1 and s^l2
    SvMode sv_mode = SvMode::geometric;
    double kappa_H = 100.0;
    std::uint64_t seed = 1;
};

struct GenerationError : std::runtime_error {
    GenSpec spec;
    GenerationError(const std::string& what, const GenSpec& sp)
        : std::runtime_error(what), spec(sp) {}
};

// Haar-distributed square orthogonal matrix.
Mat random_orthogonal(Eigen::Index dim, Rng& rng);

// Random H with H^T J H = J and kappa_2(H) = kappa_H (hyperbolic CS form);
// p = 0 or q = 0 degenerates to an orthogonal matrix.
Mat random_j_orthogonal(Eigen::Index p, Eigen::Index q, double kappa_H, Rng& rng);

// rows x cols (rows >= cols) with singular values spanning [1/kappa, 1]
// on a geometric or arithmetic grid.
Mat random_with_condition(Eigen::Index rows, Eigen::Index cols, double kappa,
                          SvMode sv_mode, Rng& rng);

// Nonsingular lower-triangular with kappa_2 = kappa.
Mat lower_triangular_with_condition(Eigen::Index dim, double kappa, SvMode sv_mode,
                                    Rng& rng);

// Random strict-valid pair with kappa(C) = s^l2 exactly and the A-factor's
// triangular core at kappa = n^l1. Retries fresh draws on a positive
// definiteness failure, up to 10 times.
ProblemPair generate_pair(const GenSpec& spec);

} // namespace gencond
