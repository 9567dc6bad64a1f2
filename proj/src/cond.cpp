#include "gencond/cond.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gencond {

static double data_fnorm(const ProblemPair& pair) {
    return std::sqrt(pair.A.squaredNorm() + pair.C.squaredNorm());
}

static double derivative_sigma_max_dense(const GenInvBundle& b, const ProblemPair& pair) {
    DerivativeBlocks blocks = derivative_blocks(b, pair, ~0ull);
    Mat M(blocks.WA.rows(), blocks.WA.cols() + blocks.WC.cols());
    M.leftCols(blocks.WA.cols()) = blocks.WA;
    M.rightCols(blocks.WC.cols()) = blocks.WC;
    return spectral_norm(M);
}

static double derivative_sigma_max_power(const GenInvBundle& b, const ProblemPair& pair,
                                         const ExactOptions& opts) {
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    Rng rng(opts.seed, 7);
    Vec v = unit_sphere(m * n + s * n, rng);
    double sigma2 = 0.0;
    for (int it = 0; it < opts.power_max_iter; ++it) {
        Mat dA = unvec(v.head(m * n), m, n);
        Mat dC = unvec(v.tail(s * n), s, n);
        Mat Y = apply_derivative(b, pair, dA, dC);
        auto [gA, gC] = apply_derivative_adjoint(b, pair, Y);
        Vec w(m * n + s * n);
        w.head(m * n) = vec(gA);
        w.tail(s * n) = vec(gC);
        const double next = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(next - sigma2) <= opts.power_tol * std::abs(next)) {
            sigma2 = next;
            break;
        }
        sigma2 = next;
    }
    return std::sqrt(std::max(sigma2, 0.0));
}

static Mat streamed_abs_numerator(const GenInvBundle& b, const ProblemPair& pair) {
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    Mat num = Mat::Zero(n, s);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            double acc = 0.0;
            for (Eigen::Index l = 0; l < n; ++l) {
                const double Gil = b.PQPdag(i, l);
                const double Clj = b.CddagA(l, j);
                const double CCil = b.CCdT(i, l);
                for (Eigen::Index k = 0; k < m; ++k)
                    acc += std::abs(b.Z(i, k) * Clj + Gil * b.JAC(k, j)) *
                           std::abs(pair.A(k, l));
                for (Eigen::Index k = 0; k < s; ++k)
                    acc += std::abs(b.CddagA(i, k) * Clj - CCil * b.ICC(k, j) -
                                    Gil * b.CtQC(k, j)) *
                           std::abs(pair.C(k, l));
            }
            num(i, j) = acc;
        }
    return num;
}

ConditionTriple exact_condition_numbers(const GenInvBundle& b, const ProblemPair& pair,
                                        const ExactOptions& opts) {
    if (opts.force_dense && opts.force_matrix_free)
        throw std::invalid_argument("exact_condition_numbers: conflicting force flags");

    const auto m = pair.m(), n = pair.n(), s = pair.s();
    const double cd_max = max_norm(b.CddagA);
    if (cd_max == 0.0)
        throw DegenerateOutputError("exact_condition_numbers: generalized inverse is zero");

    const std::uint64_t cells =
        static_cast<std::uint64_t>(n * s) * static_cast<std::uint64_t>(m * n + s * n);
    const bool dense = opts.force_dense ||
                       (!opts.force_matrix_free && cells <= opts.dense_cell_limit);
    const double sigma = dense ? derivative_sigma_max_dense(b, pair)
                               : derivative_sigma_max_power(b, pair, opts);

    ConditionTriple t;
    t.normwise = sigma * data_fnorm(pair) / b.CddagA.norm();
    Mat num = streamed_abs_numerator(b, pair);
    t.mixed = max_norm(num) / cd_max;
    t.componentwise = max_norm(dagger_div(vec(num), vec(b.CddagA)));
    return t;
}

Vec VOperator::apply(const Vec& z) const {
    if (z.size() != dim()) throw ShapeError("VOperator::apply: length mismatch");
    Vec out = c_g * (G * (G * z));
    out += c_cd * (c_z * z + Cd * (Cd.transpose() * z));
    out += c_tail * z;
    return out;
}

Mat VOperator::dense() const {
    const auto n = dim();
    Mat V = c_g * (G * G);
    V += c_cd * (c_z * Mat::Identity(n, n) + Cd * Cd.transpose());
    V += c_tail * Mat::Identity(n, n);
    return V;
}

VOperator make_v_operator(const GenInvBundle& b, const ProblemPair& pair) {
    (void)pair;
    VOperator v;
    const double jac = spectral_norm(b.JAC);
    const double ctqc = spectral_norm(b.CtQC);
    const double icc = spectral_norm(b.ICC);
    const double ccdt = spectral_norm(b.CCdT);
    v.c_g = jac * jac + ctqc * ctqc;
    v.c_cd = spectral_norm(b.CddagA);
    v.c_cd *= v.c_cd;
    v.c_z = spectral_norm(b.Z);
    v.c_z *= v.c_z;
    v.c_tail = icc * icc * ccdt * ccdt;
    v.G = b.PQPdag;
    v.Cd = b.CddagA;
    return v;
}

Mat build_v_matrix(const GenInvBundle& b, const ProblemPair& pair) {
    return make_v_operator(b, pair).dense();
}

double normwise_kron_free(const GenInvBundle& b, const ProblemPair& pair) {
    Mat V = build_v_matrix(b, pair);
    Eigen::SelfAdjointEigenSolver<Mat> es(V);
    if (es.info() != Eigen::Success)
        throw NumericalError("normwise_kron_free: eigendecomposition failed");
    const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
    return std::sqrt(lmax) * data_fnorm(pair) / b.CddagA.norm();
}

BoundTriple upper_bounds(const GenInvBundle& b, const ProblemPair& pair) {
    const double cd2 = spectral_norm(b.CddagA);
    const double z2 = spectral_norm(b.Z);
    const double g2 = spectral_norm(b.PQPdag);
    const double jac2 = spectral_norm(b.JAC);
    const double icc2 = spectral_norm(b.ICC);
    const double ccdt2 = spectral_norm(b.CCdT);
    const double ctqc2 = spectral_norm(b.CtQC);

    BoundTriple t;
    t.normwise = (cd2 * z2 + jac2 * g2 + cd2 * cd2 + icc2 * ccdt2 + ctqc2 * g2) *
                 data_fnorm(pair) / b.CddagA.norm();

    const Mat absA = pair.A.cwiseAbs();
    const Mat absC = pair.C.cwiseAbs();
    const Mat absCd = b.CddagA.cwiseAbs();
    Mat E = b.Z.cwiseAbs() * absA * absCd;
    E += b.PQPdag.cwiseAbs() * absA.transpose() * b.JAC.cwiseAbs();
    E += absCd * absC * absCd;
    E += b.CCdT.cwiseAbs() * absC.transpose() * b.ICC.cwiseAbs();
    E += b.PQPdag.cwiseAbs() * absC.transpose() * b.CtQC.cwiseAbs();

    const double cd_max = max_norm(b.CddagA);
    if (cd_max == 0.0)
        throw DegenerateOutputError("upper_bounds: generalized inverse is zero");
    t.mixed = max_norm(E) / cd_max;
    t.componentwise = max_norm(dagger_div(vec(E), vec(b.CddagA)));
    return t;
}

ConditionTriple ilsep_condition_numbers(const GenInvBundle& b, const ProblemPair& pair,
                                        const IlsepData& data) {
    if (data.x.size() != pair.n())
        throw ShapeError("ilsep_condition_numbers: solution length mismatch");
    if (max_norm(Mat(data.x)) == 0.0)
        throw DegenerateOutputError("ilsep_condition_numbers: solution is zero");

    Mat M = ilsep_derivative_matrix(b, pair, data);
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    Vec a(m * n + s * n + m + s);
    a.head(m * n) = vec(pair.A);
    a.segment(m * n, s * n) = vec(pair.C);
    a.segment(m * n + s * n, m) = data.g;
    a.tail(s) = data.h;

    ConditionTriple t;
    t.normwise = spectral_norm(M) * a.norm() / data.x.norm();
    Vec num = M.cwiseAbs() * a.cwiseAbs();
    t.mixed = num.cwiseAbs().maxCoeff() / data.x.cwiseAbs().maxCoeff();
    t.componentwise = max_norm(dagger_div(num, data.x));
    return t;
}

} // namespace gencond
