#pragma once

#include "opdil/operator.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace testsupport {

using opdil::cplx;
using opdil::Mat;

inline Mat random_matrix(std::mt19937_64& rng, int r, int c) {
    std::normal_distribution<double> nd;
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

inline Mat random_unitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n, n));
    return qr.householderQ() * Mat::Identity(n, n);
}

// Contraction with norm exactly `norm` (largest singular value).
inline Mat random_contraction(std::mt19937_64& rng, int n, double norm = 0.9) {
    Mat a = random_matrix(rng, n, n);
    Eigen::JacobiSVD<Mat> svd(a);
    return a * (norm / svd.singularValues()(0));
}

inline cplx random_disc(std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = radius * std::sqrt(u(rng));
    double t = 2.0 * M_PI * u(rng);
    return std::polar(r, t);
}

// Largest singular value by power iteration on A*A.
inline double power_norm(const Mat& a, int iters = 2000) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()).normalized();
    double s = 0.0;
    for (int k = 0; k < iters; ++k) {
        Eigen::VectorXcd w = a.adjoint() * (a * v);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        s = std::sqrt(nw);
    }
    return s;
}

// mu for E(3;2;1,2) straight from the definition: the smallest max(|z1|,|z2|)
// with det(I - A diag(z1, z2, z2)) = 0. The determinant is affine in z1, so
// z1 is solved for on a polar grid in z2 and the best cell is polished.
inline double mu_zero_search_312(const Mat& a) {
    auto dets = [&](cplx z2) {
        Mat x0 = Mat::Zero(3, 3), x1 = Mat::Zero(3, 3);
        x0(1, 1) = x0(2, 2) = z2;
        x1 = x0;
        x1(0, 0) = 1.0;
        cplx alpha = (Mat::Identity(3, 3) - a * x0).determinant();
        cplx beta = alpha - (Mat::Identity(3, 3) - a * x1).determinant();
        return std::pair{alpha, beta};
    };
    auto cost = [&](double r, double t) {
        cplx z2 = std::polar(r, t);
        auto [alpha, beta] = dets(z2);
        if (std::abs(beta) < 1e-300) return std::abs(alpha) < 1e-12 ? r : INFINITY;
        return std::max(r, std::abs(alpha / beta));
    };
    Eigen::ComplexEigenSolver<Mat> es(a, false);
    double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    if (rho == 0.0 && a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    double rmax = rho > 0 ? 1.0 / rho : 1e3;
    const int nr = 600, nt = 720;
    double best = INFINITY, br = 0, bt = 0;
    for (int i = 0; i <= nr; ++i) {
        double r = rmax * i / nr;
        for (int j = 0; j < nt; ++j) {
            double t = 2.0 * M_PI * j / nt;
            double c = cost(r, t);
            if (c < best) {
                best = c;
                br = r;
                bt = t;
            }
        }
    }
    double hr = rmax / nr, ht = 2.0 * M_PI / nt;
    while (hr > 1e-13 || ht > 1e-13) {
        bool moved = false;
        for (auto [dr, dt] : {std::pair{hr, 0.0}, {-hr, 0.0}, {0.0, ht}, {0.0, -ht}}) {
            double r = std::max(0.0, br + dr), t = bt + dt;
            double c = cost(r, t);
            if (c < best) {
                best = c;
                br = r;
                bt = t;
                moved = true;
            }
        }
        if (!moved) {
            hr *= 0.5;
            ht *= 0.5;
        }
    }
    return 1.0 / best;
}

// Closed-form tetrablock test used as an oracle.
inline double tetra_closed_form_gap(cplx x1, cplx x2, cplx x3) {
    double lhs = std::abs(x1 - std::conj(x2) * x3) + std::abs(x2 - std::conj(x1) * x3);
    double rhs = 1.0 - std::norm(x3);
    return std::max({lhs - rhs, std::abs(x1) - 1.0, std::abs(x2) - 1.0});
}

// Random gamma7 fundamental-equation configuration: T7 = U diag(sigma) V*
// with `ones` singular values equal to 1 (so D has a kernel), F_i random on
// the range of D, and T_1..T_6 solved from T_i - T_{7-i}* T7 = D F_i D.
struct RoundTrip {
    std::vector<Mat> t;  // T1..T7
    std::vector<Mat> f;  // F1..F6 compressed to Ran D
    Mat d;
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

inline RoundTrip random_roundtrip(std::mt19937_64& rng, int n, int ones) {
    std::uniform_real_distribution<double> u(0.0, 0.8);
    Eigen::VectorXd sig(n);
    for (int i = 0; i < n; ++i) sig(i) = i < ones ? 1.0 : u(rng);
    Mat t7 = random_unitary(rng, n) * sig.cast<cplx>().asDiagonal() * random_unitary(rng, n).adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(n, n) - t7.adjoint() * t7);
    Eigen::VectorXd ev = es.eigenvalues();
    Mat q = es.eigenvectors();
    Eigen::VectorXd sq(n), keep(n);
    for (int i = 0; i < n; ++i) {
        sq(i) = ev(i) > 1e-12 ? std::sqrt(ev(i)) : 0.0;
        keep(i) = ev(i) > 1e-12 ? 1.0 : 0.0;
    }
    RoundTrip rt;
    rt.d = q * sq.cast<cplx>().asDiagonal() * q.adjoint();
    Mat r = q * keep.cast<cplx>().asDiagonal() * q.adjoint();
    for (int i = 0; i < 6; ++i) rt.f.push_back(r * random_matrix(rng, n, n) * r);
    rt.t.assign(7, Mat());
    rt.t[6] = t7;
    Mat sys = Mat::Identity(n * n, n * n) - kron(t7.transpose(), t7.adjoint());
    Eigen::PartialPivLU<Mat> lu(sys);
    for (int i = 0; i < 3; ++i) {
        const Mat& fi = rt.f[static_cast<size_t>(i)];
        const Mat& fj = rt.f[static_cast<size_t>(5 - i)];
        Mat c = rt.d * fj.adjoint() * rt.d * t7 + rt.d * fi * rt.d;
        Eigen::VectorXcd v = lu.solve(Eigen::Map<const Eigen::VectorXcd>(c.data(), n * n));
        Mat ti = Eigen::Map<Mat>(v.data(), n, n);
        rt.t[static_cast<size_t>(i)] = ti;
        rt.t[static_cast<size_t>(5 - i)] = ti.adjoint() * t7 + rt.d * fj * rt.d;
    }
    return rt;
}

}  // namespace testsupport
