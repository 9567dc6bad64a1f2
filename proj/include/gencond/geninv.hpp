#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "gencond/dense.hpp"

namespace gencond {

struct InvalidProblemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ValidationMode { strict, relaxed };

struct Signature {
    Eigen::Index p = 0;
    Eigen::Index q = 0;
    Eigen::Index m() const { return p + q; }
};

// minimize_{||g-Cx||} (g-Ax)^T J (g-Ax) data: A is m-by-n with signature
// J = diag(I_p, -I_q), C is s-by-n.
struct ProblemPair {
    Mat A;
    Mat C;
    Signature sig;
    ValidationMode mode = ValidationMode::strict;

    Eigen::Index m() const { return A.rows(); }
    Eigen::Index n() const { return A.cols(); }
    Eigen::Index s() const { return C.rows(); }
};

struct ValidationReport {
    bool passed = false;
    std::string failure;
    double q_min_eigenvalue = 0.0;
    double q_spectral_norm = 0.0;
    Eigen::Index rank_AC = 0;
};

// J*X for the block signature (top p rows kept, bottom q negated).
Mat apply_signature(const Signature& sig, const Mat& X);
Vec apply_signature(const Signature& sig, const Vec& v);

ValidationReport validate(const ProblemPair& pair, double pd_tol = 1e-12,
                          double rank_tol = 0.0);

// All cached factors around C_ddag = (I - (PQP)^+ Q) C^+.
struct GenInvBundle {
    Mat Cdag;    // n x s
    Mat P;       // n x n,  I - Cdag C
    Mat Q;       // n x n,  A^T J A
    Mat PQPdag;  // n x n,  (PQP)^+
    Mat CddagA;  // n x s

    // derived factors reused by derivatives, bounds and estimators
    Mat Z;       // n x m,  (PQP)^+ A^T J
    Mat JAC;     // m x s,  J A CddagA
    Mat ICC;     // s x s,  I - C Cdag
    Mat CCdT;    // n x n,  CddagA Cdag^T
    Mat CtQC;    // s x s,  Cdag^T Q CddagA
};

GenInvBundle build_bundle(const ProblemPair& pair);

// Relative residuals of the bundle identities. `annihilate_cd_plain` is the
// unweighted annihilation (PQP)^+ Cd = 0, which does not hold in general;
// the Q-inserted variant `annihilate_cd_weighted` does.
struct BundleResiduals {
    double commute_left = 0.0;            // P G - G
    double commute_right = 0.0;           // G P - G
    double recover_p = 0.0;               // G Q P - P
    double annihilate_c = 0.0;            // C G
    double annihilate_cd_plain = 0.0;     // G Cd
    double annihilate_cd_weighted = 0.0;  // G Q Cd
};

BundleResiduals bundle_identity_residuals(const GenInvBundle& b,
                                          const ProblemPair& pair);

struct DerivativeBlocks {
    Mat WA;  // ns x mn
    Mat WC;  // ns x sn
};

DerivativeBlocks derivative_blocks(const GenInvBundle& b, const ProblemPair& pair,
                                   std::uint64_t budget_bytes = 2ull << 30);

// Directional derivative of (A, C) -> C_ddag without Kronecker forms.
Mat apply_derivative(const GenInvBundle& b, const ProblemPair& pair,
                     const Mat& dA, const Mat& dC);

// Adjoint of the same map: given Y (n x s), returns the m-by-n and
// s-by-n gradients. Together with apply_derivative this powers the
// matrix-free spectral norm of [WA, WC].
std::pair<Mat, Mat> apply_derivative_adjoint(const GenInvBundle& b,
                                             const ProblemPair& pair,
                                             const Mat& Y);

struct IlsepData {
    Vec g, h;    // right-hand sides (m, s)
    Vec x;       // solution (n)
    Vec r;       // g - A x (m)
    Vec s_vec;   // J r (m)
    Vec rho;     // (I - C Cdag) h (s)
};

IlsepData ilsep_solve(const GenInvBundle& b, const ProblemPair& pair,
                      const Vec& g, const Vec& h);

// n x (mn + sn + m + s) derivative of the ILSEP solution map
// (vec dA, vec dC, dg, dh) -> dx.
Mat ilsep_derivative_matrix(const GenInvBundle& b, const ProblemPair& pair,
                            const IlsepData& data);

// Problem archive: directory with A.mat, C.mat and meta.json (p, q, mode).
void write_archive(const std::string& dir, const ProblemPair& pair);
ProblemPair read_archive(const std::string& dir);

} // namespace gencond
