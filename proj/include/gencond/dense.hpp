#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "gencond/rng.hpp"

namespace gencond {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moore-Penrose pseudoinverse by SVD. rank_tol = 0 selects the default
// truncation max(rows, cols) * eps * sigma_max.
Mat pinv(const Mat& M, double rank_tol = 0.0);

Mat kron(const Mat& A, const Mat& B);

Vec vec(const Mat& M);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);

// Vec-permutation Pi_mn with Pi_mn * vec(X) = vec(X^T) for X m-by-n,
// stored as an index map and applied in O(mn).
struct PermMatrix {
    Eigen::Index m = 0, n = 0;

    Vec apply(const Vec& v) const;            // Pi * v
    Vec apply_transpose(const Vec& v) const;  // Pi^T * v
    Mat dense() const;                        // test oracle only
};

PermMatrix vec_perm(Eigen::Index m, Eigen::Index n);

// Entry-wise division where a zero denominator passes the numerator
// through (the dagger-division convention used by componentwise
// condition numbers).
Vec dagger_div(const Vec& a, const Vec& b);

double spectral_norm(const Mat& M);
double frobenius_norm(const Mat& M);
double max_norm(const Mat& M);
double inf_norm(const Vec& v);

// Text format: first line "rows cols", then one line per row with
// 17-significant-digit entries.
void write_matrix(const std::string& path, const Mat& M);
Mat read_matrix(const std::string& path);

// Uniform draw from the unit sphere S_{dim-1}.
Vec unit_sphere(Eigen::Index dim, Rng& rng);

Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
// R-diagonal sign fix).
Mat haar_orthogonal(Eigen::Index dim, Rng& rng);

} // namespace gencond
