#include "gencond/geninv.hpp"

#include <Eigen/Eigenvalues>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace gencond {

Mat apply_signature(const Signature& sig, const Mat& X) {
    if (X.rows() != sig.m()) throw ShapeError("apply_signature: row count does not match signature");
    Mat Y = X;
    Y.bottomRows(sig.q) *= -1.0;
    return Y;
}

Vec apply_signature(const Signature& sig, const Vec& v) {
    if (v.size() != sig.m()) throw ShapeError("apply_signature: length does not match signature");
    Vec w = v;
    w.tail(sig.q) *= -1.0;
    return w;
}

static void check_dims(const ProblemPair& pair) {
    if (pair.sig.p < 0 || pair.sig.q < 0)
        throw ShapeError("problem pair: negative signature block");
    if (pair.A.rows() != pair.sig.m())
        throw ShapeError("problem pair: A has " + std::to_string(pair.A.rows()) +
                         " rows, signature wants " + std::to_string(pair.sig.m()));
    if (pair.A.cols() != pair.C.cols())
        throw ShapeError("problem pair: A and C column counts differ");
    if (pair.A.cols() < 1 || pair.C.rows() < 1)
        throw ShapeError("problem pair: empty dimension");
}

static Mat weighted_gram(const ProblemPair& pair) {
    // A^T J A without forming J
    const auto p = pair.sig.p;
    const auto q = pair.sig.q;
    Mat Q = pair.A.topRows(p).transpose() * pair.A.topRows(p);
    if (q > 0) Q -= pair.A.bottomRows(q).transpose() * pair.A.bottomRows(q);
    return Q;
}

ValidationReport validate(const ProblemPair& pair, double pd_tol, double rank_tol) {
    check_dims(pair);
    ValidationReport rep;

    Mat Q = weighted_gram(pair);
    Q = 0.5 * (Q + Q.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(Q);
    if (es.info() != Eigen::Success)
        throw NumericalError("validate: eigendecomposition of A^T J A failed");
    const Vec ev = es.eigenvalues();
    rep.q_min_eigenvalue = ev.minCoeff();
    rep.q_spectral_norm = ev.cwiseAbs().maxCoeff();

    Mat stacked(pair.m() + pair.s(), pair.n());
    stacked.topRows(pair.m()) = pair.A;
    stacked.bottomRows(pair.s()) = pair.C;
    Eigen::BDCSVD<Mat> svd(stacked);
    const Vec sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double tol = rank_tol > 0.0
        ? rank_tol * smax
        : static_cast<double>(std::max(stacked.rows(), stacked.cols())) *
              std::numeric_limits<double>::epsilon() * smax;
    rep.rank_AC = (sv.array() > tol).count();

    if (pair.mode == ValidationMode::relaxed) {
        rep.passed = true;
        return rep;
    }
    if (rep.q_min_eigenvalue <= pd_tol * std::max(rep.q_spectral_norm, 1e-300)) {
        rep.failure = "A^T J A is not positive definite (min eigenvalue " +
                      std::to_string(rep.q_min_eigenvalue) + ")";
        return rep;
    }
    if (rep.rank_AC != pair.n()) {
        rep.failure = "[A; C] is rank deficient (rank " + std::to_string(rep.rank_AC) +
                      " of " + std::to_string(pair.n()) + ")";
        return rep;
    }
    rep.passed = true;
    return rep;
}

GenInvBundle build_bundle(const ProblemPair& pair) {
    ValidationReport rep = validate(pair);
    if (!rep.passed) throw InvalidProblemError("build_bundle: " + rep.failure);

    GenInvBundle b;
    b.Cdag = pinv(pair.C);
    b.P = Mat::Identity(pair.n(), pair.n()) - b.Cdag * pair.C;
    b.Q = weighted_gram(pair);
    Mat PQP = b.P * b.Q * b.P;
    PQP = 0.5 * (PQP + PQP.transpose()).eval();
    b.PQPdag = pinv(PQP);
    b.CddagA = (Mat::Identity(pair.n(), pair.n()) - b.PQPdag * b.Q) * b.Cdag;

    b.Z = b.PQPdag * pair.A.transpose();
    b.Z.rightCols(pair.sig.q) *= -1.0;
    b.JAC = apply_signature(pair.sig, Mat(pair.A * b.CddagA));
    b.ICC = Mat::Identity(pair.s(), pair.s()) - pair.C * b.Cdag;
    b.CCdT = b.CddagA * b.Cdag.transpose();
    b.CtQC = b.Cdag.transpose() * b.Q * b.CddagA;
    return b;
}

BundleResiduals bundle_identity_residuals(const GenInvBundle& b, const ProblemPair& pair) {
    const double gn = std::max(b.PQPdag.norm(), 1e-300);
    BundleResiduals r;
    r.commute_left = (b.P * b.PQPdag - b.PQPdag).norm() / gn;
    r.commute_right = (b.PQPdag * b.P - b.PQPdag).norm() / gn;
    r.recover_p = (b.PQPdag * b.Q * b.P - b.P).norm() / std::max(b.P.norm(), 1e-300);
    r.annihilate_c = (pair.C * b.PQPdag).norm() / (std::max(pair.C.norm(), 1e-300) * gn);
    const double cdn = std::max(b.CddagA.norm(), 1e-300);
    r.annihilate_cd_plain = (b.PQPdag * b.CddagA).norm() / (gn * cdn);
    r.annihilate_cd_weighted = (b.PQPdag * b.Q * b.CddagA).norm() / (gn * std::max(b.Q.norm(), 1.0) * cdn);
    return r;
}

DerivativeBlocks derivative_blocks(const GenInvBundle& b, const ProblemPair& pair,
                                   std::uint64_t budget_bytes) {
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    const std::uint64_t cells =
        static_cast<std::uint64_t>(n * s) * static_cast<std::uint64_t>(m * n + s * n);
    if (cells * 8 > budget_bytes)
        throw CapacityError("derivative_blocks: " + std::to_string(cells) +
                            " cells exceed the budget; use the matrix-free path");

    DerivativeBlocks d;
    d.WA.resize(n * s, m * n);
    d.WC.resize(n * s, s * n);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index row = i + j * n;
            for (Eigen::Index l = 0; l < n; ++l) {
                for (Eigen::Index k = 0; k < m; ++k)
                    d.WA(row, k + l * m) = -(b.Z(i, k) * b.CddagA(l, j) + b.PQPdag(i, l) * b.JAC(k, j));
                for (Eigen::Index k = 0; k < s; ++k)
                    d.WC(row, k + l * s) = -(b.CddagA(i, k) * b.CddagA(l, j) -
                                             b.CCdT(i, l) * b.ICC(k, j) -
                                             b.PQPdag(i, l) * b.CtQC(k, j));
            }
        }
    return d;
}

Mat apply_derivative(const GenInvBundle& b, const ProblemPair& pair,
                     const Mat& dA, const Mat& dC) {
    if (dA.rows() != pair.m() || dA.cols() != pair.n())
        throw ShapeError("apply_derivative: dA shape mismatch");
    if (dC.rows() != pair.s() || dC.cols() != pair.n())
        throw ShapeError("apply_derivative: dC shape mismatch");
    Mat d = -b.CddagA * dC * b.CddagA;
    d += b.CCdT * dC.transpose() * b.ICC;
    d += b.PQPdag * dC.transpose() * b.CtQC;
    d -= b.Z * dA * b.CddagA;
    d -= b.PQPdag * dA.transpose() * b.JAC;
    return d;
}

std::pair<Mat, Mat> apply_derivative_adjoint(const GenInvBundle& b,
                                             const ProblemPair& pair, const Mat& Y) {
    if (Y.rows() != pair.n() || Y.cols() != pair.s())
        throw ShapeError("apply_derivative_adjoint: Y shape mismatch");
    Mat gA = -(b.Z.transpose() * Y * b.CddagA.transpose() +
               b.JAC * Y.transpose() * b.PQPdag);
    Mat gC = -(b.CddagA.transpose() * Y * b.CddagA.transpose() -
               b.ICC * Y.transpose() * b.CCdT -
               b.CtQC * Y.transpose() * b.PQPdag);
    return {gA, gC};
}

static IlsepData ilsep_check_rhs(const ProblemPair& pair, const Vec& g, const Vec& h) {
    if (g.size() != pair.m()) throw ShapeError("ilsep_solve: g length mismatch");
    if (h.size() != pair.s()) throw ShapeError("ilsep_solve: h length mismatch");
    IlsepData d;
    d.g = g;
    d.h = h;
    return d;
}

IlsepData ilsep_solve(const GenInvBundle& b, const ProblemPair& pair,
                      const Vec& g, const Vec& h) {
    IlsepData d = ilsep_check_rhs(pair, g, h);
    d.x = b.CddagA * h + b.Z * g;
    d.r = g - pair.A * d.x;
    d.s_vec = apply_signature(pair.sig, d.r);
    d.rho = b.ICC * h;
    return d;
}

Mat ilsep_derivative_matrix(const GenInvBundle& b, const ProblemPair& pair,
                            const IlsepData& data) {
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    Mat M(n, m * n + s * n + m + s);
    Vec w = b.Cdag.transpose() * (pair.A.transpose() * data.s_vec);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index l = 0; l < n; ++l) {
            for (Eigen::Index k = 0; k < m; ++k)
                M(i, k + l * m) = -data.x(l) * b.Z(i, k) + b.PQPdag(i, l) * data.s_vec(k);
            for (Eigen::Index k = 0; k < s; ++k)
                M(i, m * n + k + l * s) = -data.x(l) * b.CddagA(i, k) +
                                          b.CCdT(i, l) * data.rho(k) -
                                          b.PQPdag(i, l) * w(k);
        }
        for (Eigen::Index k = 0; k < m; ++k) M(i, m * n + s * n + k) = b.Z(i, k);
        for (Eigen::Index k = 0; k < s; ++k) M(i, m * n + s * n + m + k) = b.CddagA(i, k);
    }
    return M;
}

void write_archive(const std::string& dir, const ProblemPair& pair) {
    check_dims(pair);
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_matrix((fs::path(dir) / "A.mat").string(), pair.A);
    write_matrix((fs::path(dir) / "C.mat").string(), pair.C);
    nlohmann::json meta;
    meta["p"] = pair.sig.p;
    meta["q"] = pair.sig.q;
    meta["mode"] = pair.mode == ValidationMode::strict ? "strict" : "relaxed";
    std::ofstream out(fs::path(dir) / "meta.json");
    if (!out) throw std::runtime_error("write_archive: cannot open meta.json in " + dir);
    out << meta.dump(2) << "\n";
}

ProblemPair read_archive(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream in(fs::path(dir) / "meta.json");
    if (!in) throw std::runtime_error("read_archive: missing meta.json in " + dir);
    nlohmann::json meta = nlohmann::json::parse(in);

    ProblemPair pair;
    pair.sig.p = meta.at("p").get<Eigen::Index>();
    pair.sig.q = meta.at("q").get<Eigen::Index>();
    const std::string mode = meta.value("mode", "strict");
    if (mode == "strict") pair.mode = ValidationMode::strict;
    else if (mode == "relaxed") pair.mode = ValidationMode::relaxed;
    else throw std::runtime_error("read_archive: unknown mode '" + mode + "'");
    pair.A = read_matrix((fs::path(dir) / "A.mat").string());
    pair.C = read_matrix((fs::path(dir) / "C.mat").string());
    check_dims(pair);
    return pair;
}

} // namespace gencond
