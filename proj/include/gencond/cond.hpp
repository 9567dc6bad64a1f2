#pragma once

#include "gencond/geninv.hpp"

namespace gencond {

struct DegenerateOutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConditionTriple {
    double normwise = 0.0;
    double mixed = 0.0;
    double componentwise = 0.0;
};

struct BoundTriple {
    double normwise = 0.0;
    double mixed = 0.0;
    double componentwise = 0.0;
};

struct ExactOptions {
    bool force_dense = false;        // always materialize [WA WC] for the SVD
    bool force_matrix_free = false;  // never materialize it
    std::uint64_t dense_cell_limit = 1000000;
    double power_tol = 1e-10;
    int power_max_iter = 5000;
    std::uint64_t seed = 2024;       // start vector of the power iteration
};

// Normwise / mixed / componentwise condition numbers of (A, C) -> C_ddag.
// The normwise number needs the largest singular value of the ns x (mn+sn)
// derivative; small problems take a dense SVD, large ones a power iteration
// on apply_derivative / apply_derivative_adjoint. Mixed and componentwise
// always stream over derivative entries without storing them.
ConditionTriple exact_condition_numbers(const GenInvBundle& b, const ProblemPair& pair,
                                        const ExactOptions& opts = {});

// n x n symmetric comparison matrix whose spectral norm replaces the
// Kronecker-sized SVD in the cheap normwise formula. Kept in factored
// form: V = c_g G^2 + c_cd (c_z I + Cd Cd^T) + c_tail I.
struct VOperator {
    double c_g = 0.0;     // ||J A Cd||_2^2 + ||Cd^T Q Cd||_2^2
    double c_cd = 0.0;    // ||Cd||_2^2
    double c_z = 0.0;     // ||Z||_2^2
    double c_tail = 0.0;  // ||I - C Cdag||_2^2 * ||Cd Cdag^T||_2^2
    Mat G;                // n x n
    Mat Cd;               // n x s

    Eigen::Index dim() const { return G.rows(); }
    Vec apply(const Vec& z) const;
    Mat dense() const;
};

VOperator make_v_operator(const GenInvBundle& b, const ProblemPair& pair);
Mat build_v_matrix(const GenInvBundle& b, const ProblemPair& pair);

// sqrt(||V||_2) * sqrt(||A||_F^2 + ||C||_F^2) / ||Cd||_F
double normwise_kron_free(const GenInvBundle& b, const ProblemPair& pair);

// Closed-form upper bounds on the three condition numbers.
BoundTriple upper_bounds(const GenInvBundle& b, const ProblemPair& pair);

// Condition numbers of the full solution map (A, C, g, h) -> x.
ConditionTriple ilsep_condition_numbers(const GenInvBundle& b, const ProblemPair& pair,
                                        const IlsepData& data);

} // namespace gencond
