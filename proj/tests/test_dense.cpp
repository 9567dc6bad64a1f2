#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "gencond/dense.hpp"
#include "gencond/testgen.hpp"

using namespace gencond;

namespace {
Mat rand_mat(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
    Rng rng(seed, 0);
    return gaussian_matrix(r, c, rng);
}
} // namespace

TEST_CASE("pinv on identity") {
    Mat I3 = Mat::Identity(3, 3);
    CHECK((pinv(I3) - I3).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pinv on singular diagonal") {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 2.0;
    Mat Dp = pinv(D);
    CHECK(Dp(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(Dp(0, 1)) < 1e-15);
    CHECK(std::abs(Dp(1, 0)) < 1e-15);
    CHECK(std::abs(Dp(1, 1)) < 1e-15);
}

TEST_CASE("pinv of a column") {
    Mat v(2, 1);
    v << 1.0, 1.0;
    Mat vp = pinv(v);
    REQUIRE(vp.rows() == 1);
    REQUIRE(vp.cols() == 2);
    CHECK(vp(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vp(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Penrose conditions on random 20x12") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Rng rng(seed, 0);
        Mat M = random_with_condition(20, 12, 10.0, SvMode::geometric, rng);
        Mat Mp = pinv(M);
        const double tol = 1e-10 * spectral_norm(M);
        CHECK((M * Mp * M - M).norm() <= tol);
        CHECK((Mp * M * Mp - Mp).norm() <= tol);
        CHECK(((M * Mp) - (M * Mp).transpose()).norm() <= tol);
        CHECK(((Mp * M) - (Mp * M).transpose()).norm() <= tol);
    }
}

TEST_CASE("vec column stacking") {
    Mat M(2, 2);
    M << 1, 2, 3, 4;
    Vec v = vec(M);
    CHECK(v(0) == 1);
    CHECK(v(1) == 3);
    CHECK(v(2) == 2);
    CHECK(v(3) == 4);
    Mat back = unvec(v, 2, 2);
    CHECK((back - M).norm() == 0.0);
}

TEST_CASE("vec_perm maps vec(X) to vec(X^T)") {
    Vec v(4);
    v << 1, 2, 3, 4;
    PermMatrix P = vec_perm(2, 2);
    Vec w = P.apply(v);
    CHECK(w(0) == 1);
    CHECK(w(1) == 3);
    CHECK(w(2) == 2);
    CHECK(w(3) == 4);

    Mat X = rand_mat(3, 5, 7);
    PermMatrix P35 = vec_perm(3, 5);
    CHECK((P35.apply(vec(X)) - vec(Mat(X.transpose()))).norm() == 0.0);
    CHECK((P35.apply_transpose(P35.apply(vec(X))) - vec(X)).norm() == 0.0);
    CHECK((P35.dense() * vec(X) - vec(Mat(X.transpose()))).norm() == 0.0);
}

TEST_CASE("vec of triple product equals Kronecker action") {
    Mat A = rand_mat(3, 4, 11), X = rand_mat(4, 5, 12), B = rand_mat(5, 2, 13);
    Vec lhs = vec(Mat(A * X * B));
    Vec rhs = kron(B.transpose(), A) * vec(X);
    const double scale = lhs.cwiseAbs().maxCoeff();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("spectral norm of Kronecker product factorizes") {
    Mat A = rand_mat(4, 3, 21), B = rand_mat(3, 5, 22);
    const double prod = spectral_norm(A) * spectral_norm(B);
    CHECK(std::abs(spectral_norm(kron(A, B)) - prod) <= 1e-10 * prod);
}

TEST_CASE("Kronecker mixed product") {
    Mat A = rand_mat(3, 4, 31), B = rand_mat(2, 3, 32);
    Mat C = rand_mat(4, 2, 33), D = rand_mat(3, 4, 34);
    Mat lhs = kron(A, B) * kron(C, D);
    Mat rhs = kron(Mat(A * C), Mat(B * D));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("dagger division passes numerator at zero denominator") {
    Vec num(2), den(2);
    num << 5, 7;
    den << 0, 2;
    Vec r = dagger_div(num, den);
    CHECK(r(0) == doctest::Approx(5.0));
    CHECK(r(1) == doctest::Approx(3.5));
}

TEST_CASE("dagger division yields the relative distance") {
    Vec a(4), b(4);
    a << 1.5, -2.0, 0.25, 3.0;
    b << 1.0, -1.0, 0.0, 4.0;
    Vec d = dagger_div(a - b, b);
    double expect = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double diff = std::abs(a(i) - b(i));
        expect = std::max(expect, b(i) == 0.0 ? diff : diff / std::abs(b(i)));
    }
    CHECK(inf_norm(d.cwiseAbs()) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(inf_norm(dagger_div(a - a, a)) == 0.0);
}

TEST_CASE("norms") {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = -5.0;
    CHECK(spectral_norm(D) == doctest::Approx(5.0).epsilon(1e-14));
    Mat R(1, 2);
    R << 3, 4;
    CHECK(frobenius_norm(R) == doctest::Approx(5.0).epsilon(1e-14));
    Mat M = rand_mat(5, 4, 41);
    CHECK(max_norm(M) == doctest::Approx(inf_norm(vec(M))).epsilon(1e-15));
}

TEST_CASE("matrix text format round trip") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "gencond_mat_rt.mat").string();
    Mat M = rand_mat(7, 3, 51);
    M(0, 0) = 1.0 / 3.0;
    M(6, 2) = -1e-17;
    write_matrix(path, M);
    Mat R = read_matrix(path);
    REQUIRE(R.rows() == 7);
    REQUIRE(R.cols() == 3);
    CHECK((R - M).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
    CHECK_THROWS(read_matrix(path));
}

TEST_CASE("unit sphere samples") {
    Rng rng(9, 0);
    for (int i = 0; i < 100; ++i) {
        Vec v = unit_sphere(6, rng);
        CHECK(std::abs(v.norm() - 1.0) <= 1e-14);
    }
    Vec v1 = unit_sphere(1, rng);
    CHECK(std::abs(std::abs(v1(0)) - 1.0) <= 1e-15);

    Vec mean = Vec::Zero(5);
    const int N = 10000;
    for (int i = 0; i < N; ++i) mean += unit_sphere(5, rng);
    mean /= N;
    for (int i = 0; i < 5; ++i) CHECK(std::abs(mean(i)) <= 3.5 / std::sqrt(double(N)));
}

TEST_CASE("rng determinism and stream independence") {
    Rng a(123, 4), b(123, 4), c(123, 5);
    bool same = true, diff = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        same = same && (x == y);
        diff = diff || (x != z);
    }
    CHECK(same);
    CHECK(diff);
    Rng g(7, 0);
    double acc = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double u = g.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        acc += g.gaussian();
    }
    CHECK(std::abs(acc / 1000.0) < 0.15);
}

TEST_CASE("haar orthogonal factor") {
    Rng rng(3, 0);
    Mat Q = haar_orthogonal(50, rng);
    CHECK((Q.transpose() * Q - Mat::Identity(50, 50)).norm() <= 1e-12);
    CHECK(std::abs(std::abs(Q.determinant()) - 1.0) <= 1e-10);
    Mat Q1 = haar_orthogonal(1, rng);
    CHECK(std::abs(std::abs(Q1(0, 0)) - 1.0) <= 1e-15);
}

TEST_CASE("kron capacity guard") {
    Mat big = Mat::Zero(40000, 1);
    CHECK_THROWS_AS((void)kron(big, big), CapacityError);
}
