#include "gencond/estimators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <vector>

namespace gencond {

double wallis_factor(Eigen::Index j) {
    if (j < 1) throw std::invalid_argument("wallis_factor: j >= 1 required");
    return std::sqrt(2.0 / (M_PI * (static_cast<double>(j) - 0.5)));
}

static void check_cfg(const EstimatorConfig& cfg) {
    if (!(cfg.delta > 0.0))
        throw std::invalid_argument("estimator config: delta must be positive");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw std::invalid_argument("estimator config: epsilon must lie in (0,1)");
    if (cfg.k < 1) throw std::invalid_argument("estimator config: k must be >= 1");
}

ProbBracket prob_spectral_norm(const std::function<Vec(const Vec&)>& apply,
                               Eigen::Index dim, double delta, double epsilon,
                               int max_iter, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("prob_spectral_norm: dim >= 1 required");
    if (!(delta > 0.0) || !(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("prob_spectral_norm: bad delta or epsilon");

    const double inf = std::numeric_limits<double>::infinity();
    // certificate threshold: P(|v_1| <= margin) ~= 2 f(0) margin on S_{dim-1}
    double log_de = -inf;
    if (dim > 1) {
        const double log_f0 = std::lgamma(dim / 2.0) - 0.5 * std::log(M_PI) -
                              std::lgamma((dim - 1) / 2.0);
        log_de = std::log(epsilon / 2.0) - log_f0;
    }

    const int limit = max_iter <= 0 ? static_cast<int>(dim)
                                    : std::min<int>(max_iter, static_cast<int>(dim));
    std::vector<Vec> basis;
    basis.push_back(unit_sphere(dim, rng));
    std::vector<double> alphas, betas;

    ProbBracket out;
    out.alpha2 = inf;
    for (int k = 1; k <= limit; ++k) {
        Vec w = apply(basis.back());
        if (w.size() != dim) throw ShapeError("prob_spectral_norm: operator changed size");
        const double a = basis.back().dot(w);
        alphas.push_back(a);
        w -= a * basis.back();
        if (basis.size() > 1) w -= betas.back() * basis[basis.size() - 2];
        for (const Vec& u : basis) w -= u.dot(w) * u;
        const double beta = w.norm();

        Mat T = Mat::Zero(k, k);
        for (int i = 0; i < k; ++i) T(i, i) = alphas[i];
        for (int i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = betas[i];
        Eigen::SelfAdjointEigenSolver<Mat> es(T);
        const Vec ritz = es.eigenvalues();
        out.alpha1 = ritz(k - 1);
        out.iterations = k;

        double log_prod_b = beta > 0.0 ? std::log(beta) : -inf;
        for (double bi : betas) log_prod_b += std::log(bi);
        if (!std::isfinite(log_prod_b)) {
            out.alpha2 = out.alpha1;
            out.converged = true;
            break;
        }
        auto certified = [&](double theta) {
            if (theta <= out.alpha1) return false;
            double log_p = 0.0;
            for (int i = 0; i < k; ++i) log_p += std::log(theta - ritz(i));
            return log_prod_b - log_p <= log_de;
        };
        double hi = out.alpha1 + std::max(std::abs(out.alpha1), 1.0);
        for (int d = 0; d < 200 && !certified(hi); ++d)
            hi = out.alpha1 + (hi - out.alpha1) * 2.0;
        double lo = out.alpha1;
        for (int d = 0; d < 100; ++d) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= out.alpha1) break;
            (certified(mid) ? hi : lo) = mid;
        }
        out.alpha2 = hi;
        if (out.alpha2 <= (1.0 + delta) * out.alpha1) {
            out.converged = true;
            break;
        }
        if (beta == 0.0) {
            out.alpha2 = out.alpha1;
            out.converged = true;
            break;
        }
        if (k == limit) break;
        betas.push_back(beta);
        basis.push_back(w / beta);
    }
    if (!out.converged && out.iterations == static_cast<int>(dim)) {
        // Krylov space exhausted: the top Ritz value is the exact extreme
        out.alpha2 = out.alpha1;
        out.converged = true;
    }
    return out;
}

NormEstimate estimate_normwise_probabilistic(const GenInvBundle& b,
                                             const ProblemPair& pair,
                                             const EstimatorConfig& cfg) {
    check_cfg(cfg);
    const VOperator V = make_v_operator(b, pair);
    Rng rng(cfg.seed, 11);
    ProbBracket br = prob_spectral_norm([&](const Vec& z) { return V.apply(z); },
                                        V.dim(), cfg.delta, cfg.epsilon,
                                        cfg.max_iter, rng);
    NormEstimate e;
    e.alpha1 = br.alpha1;
    e.alpha2 = br.alpha2;
    e.converged = br.converged;
    e.iterations = br.iterations;
    const double fac = std::sqrt(pair.A.squaredNorm() + pair.C.squaredNorm());
    e.value = std::sqrt(std::max(0.5 * (br.alpha1 + br.alpha2), 0.0)) * fac /
              b.CddagA.norm();
    return e;
}

static Mat orthonormal_probes(Eigen::Index dim, int k, Rng& rng) {
    Mat Z(dim, k);
    for (int i = 0; i < k; ++i) Z.col(i) = unit_sphere(dim, rng);
    Eigen::HouseholderQR<Mat> qr(Z);
    return qr.householderQ() * Mat::Identity(dim, k);
}

double estimate_normwise_ssce(const GenInvBundle& b, const ProblemPair& pair,
                              const EstimatorConfig& cfg, bool compat_sigma) {
    check_cfg(cfg);
    const auto n = pair.n();
    if (cfg.k > n)
        throw std::invalid_argument("estimate_normwise_ssce: k exceeds the dimension n");
    const VOperator V = make_v_operator(b, pair);
    const double icc2 = spectral_norm(b.ICC);
    Rng rng(cfg.seed, 12);
    Mat Z = orthonormal_probes(n, cfg.k, rng);

    const double fac = std::sqrt(pair.A.squaredNorm() + pair.C.squaredNorm());
    const double cdf = b.CddagA.norm();
    double sum_sq = 0.0;
    for (int i = 0; i < cfg.k; ++i) {
        const Vec z = Z.col(i);
        double sigma;
        if (!compat_sigma) {
            sigma = z.dot(V.apply(z));
        } else {
            const Vec Gz = b.PQPdag * z;
            const Vec AGz = pair.A * Gz;
            const Vec Cdz = b.CddagA.transpose() * z;
            const Vec tail = b.CddagA * Cdz;
            sigma = V.c_g * Gz.squaredNorm() + V.c_cd * (AGz.squaredNorm() + Cdz.squaredNorm()) +
                    icc2 * icc2 * tail.squaredNorm();
        }
        const double ni = std::sqrt(std::max(sigma, 0.0)) * fac / cdf;
        sum_sq += ni * ni;
    }
    return wallis_factor(cfg.k) / wallis_factor(n) * std::sqrt(sum_sq);
}

MixedComponentwiseEstimate estimate_mixed_componentwise_ssce(const GenInvBundle& b,
                                                             const ProblemPair& pair,
                                                             const EstimatorConfig& cfg) {
    check_cfg(cfg);
    const auto m = pair.m(), n = pair.n(), s = pair.s();
    const Eigen::Index t = m * n + s * n;
    if (cfg.k > t)
        throw std::invalid_argument(
            "estimate_mixed_componentwise_ssce: k exceeds the input dimension");
    Rng rng(cfg.seed, 13);
    Mat Z = orthonormal_probes(t, cfg.k, rng);

    Vec acc = Vec::Zero(n * s);
    for (int i = 0; i < cfg.k; ++i) {
        Mat dA = unvec(Z.col(i).head(m * n), m, n);
        Mat dC = unvec(Z.col(i).tail(s * n), s, n);
        Vec u = vec(apply_derivative(b, pair, dA, dC));
        acc += u.cwiseProduct(u);
    }
    Vec kappa = (wallis_factor(cfg.k) / wallis_factor(t)) * acc.cwiseSqrt();

    const double cd_max = max_norm(b.CddagA);
    if (cd_max == 0.0)
        throw DegenerateOutputError(
            "estimate_mixed_componentwise_ssce: generalized inverse is zero");
    MixedComponentwiseEstimate e;
    e.mixed = kappa.cwiseAbs().maxCoeff() / cd_max;
    e.componentwise = max_norm(dagger_div(kappa, vec(b.CddagA)));
    return e;
}

} // namespace gencond
