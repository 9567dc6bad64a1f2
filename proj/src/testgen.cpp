#include "gencond/testgen.hpp"

#include <cmath>

namespace gencond {

Mat random_orthogonal(Eigen::Index dim, Rng& rng) {
    return haar_orthogonal(dim, rng);
}

// Orthonormal columns (rows >= cols) or rows (rows < cols).
static Mat thin_haar(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    if (rows == 0 || cols == 0) return Mat(rows, cols);
    if (rows < cols) return Mat(thin_haar(cols, rows, rng).transpose());
    Mat G = gaussian_matrix(rows, cols, rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(rows, cols);
    Mat R = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    return Q;
}

Mat random_j_orthogonal(Eigen::Index p, Eigen::Index q, double kappa_H, Rng& rng) {
    if (p < 0 || q < 0) throw ShapeError("random_j_orthogonal: negative block size");
    if (kappa_H < 1.0)
        throw std::invalid_argument("random_j_orthogonal: kappa_H must be >= 1");
    if (p == 0 || q == 0) return random_orthogonal(p + q, rng);

    const Eigen::Index m = p + q;
    const Eigen::Index r = std::min(p, q);
    const double theta_max = 0.5 * std::log(kappa_H);

    Mat S = Mat::Identity(m, m);
    for (Eigen::Index i = 0; i < r; ++i) {
        const double theta =
            r == 1 ? theta_max : theta_max * static_cast<double>(i) / static_cast<double>(r - 1);
        S(i, i) = S(p + i, p + i) = std::cosh(theta);
        S(i, p + i) = S(p + i, i) = std::sinh(theta);
    }
    Mat U1 = random_orthogonal(p, rng);
    Mat U2 = random_orthogonal(q, rng);
    Mat V1 = random_orthogonal(p, rng);
    Mat V2 = random_orthogonal(q, rng);

    Mat H(m, m);
    H.topRows(p) = U1 * S.topRows(p);
    H.bottomRows(q) = U2 * S.bottomRows(q);
    Mat Ht(m, m);
    Ht.leftCols(p) = H.leftCols(p) * V1.transpose();
    Ht.rightCols(q) = H.rightCols(q) * V2.transpose();
    return Ht;
}

Mat random_with_condition(Eigen::Index rows, Eigen::Index cols, double kappa,
                          SvMode sv_mode, Rng& rng) {
    if (rows < cols || cols < 1)
        throw ShapeError("random_with_condition: need rows >= cols >= 1");
    if (kappa < 1.0)
        throw std::invalid_argument("random_with_condition: kappa must be >= 1");
    Vec sv(cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (cols == 1) {
            sv(i) = 1.0;
        } else if (sv_mode == SvMode::geometric) {
            sv(i) = std::pow(kappa, -static_cast<double>(i) / static_cast<double>(cols - 1));
        } else {
            const double f = static_cast<double>(i) / static_cast<double>(cols - 1);
            sv(i) = 1.0 + f * (1.0 / kappa - 1.0);
        }
    }
    Mat U = thin_haar(rows, cols, rng);
    Mat V = random_orthogonal(cols, rng);
    return U * sv.asDiagonal() * V.transpose();
}

Mat lower_triangular_with_condition(Eigen::Index dim, double kappa, SvMode sv_mode,
                                    Rng& rng) {
    if (dim == 0) return Mat(0, 0);
    Mat M = random_with_condition(dim, dim, kappa, sv_mode, rng);
    Eigen::HouseholderQR<Mat> qr(M);
    Mat R = qr.matrixQR().template triangularView<Eigen::Upper>();
    Mat L = R.transpose();
    for (Eigen::Index j = 0; j < dim; ++j)
        if (L(j, j) < 0.0) L.col(j) *= -1.0;
    return L;
}

ProblemPair generate_pair(const GenSpec& spec) {
    const auto p = spec.p, q = spec.q, n = spec.n, s = spec.s;
    if (!(p >= 0 && q >= 0 && p + q >= n && n >= s && s >= 1))
        throw std::invalid_argument("generate_pair: need p+q >= n >= s >= 1");
    if (spec.kappa_H < 1.0)
        throw std::invalid_argument("generate_pair: kappa_H must be >= 1");
    if (p < n - s)
        throw GenerationError("generate_pair: p < n-s leaves no room for the "
                              "positive-block rows", spec);

    const double kappa_A = std::pow(static_cast<double>(n), spec.l1);
    const double kappa_C = std::pow(static_cast<double>(s), spec.l2);
    const Eigen::Index m = p + q;
    Rng rng(spec.seed, 21);

    std::string last_failure;
    for (int attempt = 0; attempt < 10; ++attempt) {
        Mat Qo = random_orthogonal(n, rng);
        Mat U = random_orthogonal(s, rng);
        Mat H = random_j_orthogonal(p, q, spec.kappa_H, rng);

        Mat Lt = Mat::Zero(m, n);
        if (n > s) {
            Lt.block(0, 0, n - s, s) = gaussian_matrix(n - s, s, rng);
            Lt.block(0, s, n - s, n - s) =
                lower_triangular_with_condition(n - s, kappa_A, spec.sv_mode, rng);
        }
        if (p - n + s > 0) Lt.block(n - s, 0, p - n + s, s) = thin_haar(p - n + s, s, rng);
        if (q > 0)
            Lt.block(p, 0, q, s) =
                gaussian_matrix(q, s, rng) * (0.5 / (std::sqrt(static_cast<double>(q)) +
                                                     std::sqrt(static_cast<double>(s))));

        Mat K11 = lower_triangular_with_condition(s, kappa_C, spec.sv_mode, rng);
        Mat Cblock = Mat::Zero(s, n);
        Cblock.leftCols(s) = K11;

        ProblemPair pair;
        pair.A = H * Lt * Qo.transpose();
        pair.C = U * Cblock * Qo.transpose();
        pair.sig = Signature{p, q};
        pair.mode = ValidationMode::strict;

        ValidationReport rep = validate(pair);
        if (rep.passed) return pair;
        last_failure = rep.failure;
    }
    throw GenerationError("generate_pair: 10 attempts failed strict validation (" +
                              last_failure + ")",
                          spec);
}

} // namespace gencond
