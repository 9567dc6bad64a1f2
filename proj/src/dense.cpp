#include "gencond/dense.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gencond {

namespace {

std::uint64_t splitmix_fin(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace

std::uint64_t Rng::next_u64() {
    std::uint64_t base = splitmix_fin(seed_ + 0x9e3779b97f4a7c15ULL * (stream_ + 1));
    return splitmix_fin(base + 0x9e3779b97f4a7c15ULL * (++counter_));
}

double Rng::uniform() {
    // 53-bit mantissa, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Mat pinv(const Mat& M, double rank_tol) {
    Eigen::BDCSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("pinv: SVD failed to converge");
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    double tol = rank_tol > 0.0
                     ? rank_tol * smax
                     : static_cast<double>(std::max(M.rows(), M.cols())) *
                           std::numeric_limits<double>::epsilon() * smax;
    Vec inv = Vec::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Mat kron(const Mat& A, const Mat& B) {
    double cells = static_cast<double>(A.rows()) * B.rows() *
                   static_cast<double>(A.cols()) * B.cols();
    if (cells > 5e8)
        throw CapacityError("kron: result would exceed the memory budget");
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Vec vec(const Mat& M) {
    return Eigen::Map<const Vec>(M.data(), M.size());
}

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw ShapeError("unvec: length " + std::to_string(v.size()) +
                         " != " + std::to_string(rows) + "*" + std::to_string(cols));
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Vec PermMatrix::apply(const Vec& v) const {
    if (v.size() != m * n) throw ShapeError("vec_perm: length mismatch");
    Vec out(m * n);
    // out = vec(X^T): out[j + i*n] = v[i + j*m], X m-by-n
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            out(j + i * n) = v(i + j * m);
    return out;
}

Vec PermMatrix::apply_transpose(const Vec& v) const {
    if (v.size() != m * n) throw ShapeError("vec_perm: length mismatch");
    Vec out(m * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            out(i + j * m) = v(j + i * n);
    return out;
}

Mat PermMatrix::dense() const {
    Mat P = Mat::Zero(m * n, m * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            P(j + i * n, i + j * m) = 1.0;
    return P;
}

PermMatrix vec_perm(Eigen::Index m, Eigen::Index n) {
    if (m < 1 || n < 1) throw ShapeError("vec_perm: dimensions must be >= 1");
    return PermMatrix{m, n};
}

Vec dagger_div(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeError("dagger_div: length mismatch");
    Vec out(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out(i) = b(i) != 0.0 ? a(i) / b(i) : a(i);
    return out;
}

double spectral_norm(const Mat& M) {
    if (M.size() == 0) return 0.0;
    Eigen::BDCSVD<Mat> svd(M);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double frobenius_norm(const Mat& M) { return M.norm(); }

double max_norm(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

double inf_norm(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

void write_matrix(const std::string& path, const Mat& M) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_matrix: cannot open " + path);
    f << M.rows() << " " << M.cols() << "\n";
    f << std::setprecision(17);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            if (j) f << " ";
            f << M(i, j);
        }
        f << "\n";
    }
    if (!f) throw std::runtime_error("write_matrix: write failed for " + path);
}

Mat read_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_matrix: cannot open " + path);
    Eigen::Index rows = 0, cols = 0;
    if (!(f >> rows >> cols) || rows < 1 || cols < 1)
        throw std::runtime_error("read_matrix: bad header in " + path);
    Mat M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(f >> M(i, j)))
                throw std::runtime_error("read_matrix: truncated data in " + path);
    if (!M.allFinite())
        throw std::runtime_error("read_matrix: non-finite entry in " + path);
    return M;
}

Vec unit_sphere(Eigen::Index dim, Rng& rng) {
    if (dim < 1) throw ShapeError("unit_sphere: dim must be >= 1");
    Vec v(dim);
    for (;;) {
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.gaussian();
        double nrm = v.norm();
        if (nrm > 1e-300) return v / nrm;
    }
}

Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Mat M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            M(i, j) = rng.gaussian();
    return M;
}

Mat haar_orthogonal(Eigen::Index dim, Rng& rng) {
    Mat G = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j)
        if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    return Q;
}

} // namespace gencond
