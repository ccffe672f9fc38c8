#include "opdil/opcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace opdil {

namespace {

void require_square(const Mat& a, const char* what) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(what) + ": input must be square");
}

void require_nonempty(const Mat& a, const char* what) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument(std::string(what) + ": dimension-zero input");
}

double lambda_max_hermitian_part(const Mat& a, double theta) {
    cplx e = std::polar(1.0, theta);
    Mat h = 0.5 * (e * a + std::conj(e) * a.adjoint());
    if (h.rows() == 1) return h(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double golden_max(const Mat& a, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = lambda_max_hermitian_part(a, x1), f2 = lambda_max_hermitian_part(a, x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = lambda_max_hermitian_part(a, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = lambda_max_hermitian_part(a, x1);
        }
    }
    return std::max({f1, f2, lambda_max_hermitian_part(a, 0.5 * (lo + hi))});
}

bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

}  // namespace

double op_norm(const Mat& a) {
    require_nonempty(a, "op_norm");
    if (a.size() == 1) return std::abs(a(0, 0));
    double amax = a.cwiseAbs().maxCoeff();
    if (amax == 0.0) return 0.0;
    // zero rows and columns do not change the norm
    std::vector<Eigen::Index> rows, cols;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (a.row(i).cwiseAbs().maxCoeff() > 0.0) rows.push_back(i);
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (a.col(j).cwiseAbs().maxCoeff() > 0.0) cols.push_back(j);
    // largest eigenvalue of the smaller Gram matrix, after scaling
    Mat s = a(rows, cols) / amax;
    Mat g = s.rows() <= s.cols() ? Mat(s * s.adjoint()) : Mat(s.adjoint() * s);
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return amax * std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double op_norm(const Operator& a) { return op_norm(a.mat()); }

bool is_hermitian(const Mat& h, double tol) {
    if (h.rows() != h.cols()) return false;
    double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Band spectral_band(const Operator& h, const Mat& result) {
    Mat sq = result * result;
    if ((sq - result).cwiseAbs().maxCoeff() <= 1e-9 && (result - h.mat()).cwiseAbs().maxCoeff() <= 1e-9) return h.band();
    // diagonal input: f acts entrywise, so wrong entries stay where they were
    auto diagonal = [](const Mat& m) {
        double off = (m - Mat(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
        return off <= 1e-13 * std::max(1.0, m.cwiseAbs().maxCoeff());
    };
    if (diagonal(h.mat()) && diagonal(result)) return h.band();
    if (h.band().is_exact()) {
        Band b = h.band();
        if (b.level.up != 0 || b.level.down != 0) b.level.up = b.level.down = kUnbounded;
        if (b.copy.up != 0 || b.copy.down != 0) b.copy.up = b.copy.down = kUnbounded;
        return b;
    }
    return Band::unbounded();
}

Operator herm_sqrt(const Operator& h, double clamp) {
    const Mat& m = h.mat();
    require_square(m, "herm_sqrt");
    if (!is_hermitian(m)) throw std::invalid_argument("herm_sqrt: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    // roundoff-level eigenvalues would otherwise surface as sqrt(eps) noise
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) <= floor) ev(i) = 0.0;
        if (ev(i) < -clamp) {
            std::ostringstream os;
            os << "herm_sqrt: negative eigenvalue " << ev(i);
            throw std::domain_error(os.str());
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    Mat s = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    s = 0.5 * (s + s.adjoint());
    return Operator(s, spectral_band(h, s));
}

double spectral_radius(const Mat& a) {
    require_square(a, "spectral_radius");
    require_nonempty(a, "spectral_radius");
    if (a.rows() == 1) return std::abs(a(0, 0));
    Eigen::ComplexEigenSolver<Mat> es(a, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Operator& a) { return spectral_radius(a.mat()); }

double numerical_radius(const Mat& a, const NumericalRadiusOptions& opt) {
    require_square(a, "numerical_radius");
    require_nonempty(a, "numerical_radius");
    const int n = std::max(opt.coarse, 8);
    const double step = 2.0 * std::numbers::pi / n;
    std::vector<double> f = evaluate_grid(n, [&](int i) { return lambda_max_hermitian_part(a, i * step); }, opt.exec);
    std::vector<int> peaks;
    for (int i = 0; i < n; ++i) {
        double l = f[static_cast<size_t>((i + n - 1) % n)], r = f[static_cast<size_t>((i + 1) % n)];
        if (f[static_cast<size_t>(i)] >= l && f[static_cast<size_t>(i)] >= r) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](int x, int y) { return f[static_cast<size_t>(x)] > f[static_cast<size_t>(y)]; });
    if (static_cast<int>(peaks.size()) > opt.refine) peaks.resize(static_cast<size_t>(opt.refine));
    double best = *std::max_element(f.begin(), f.end());
    std::vector<double> refined = evaluate_grid(
        static_cast<int>(peaks.size()),
        [&](int k) {
            double c = peaks[static_cast<size_t>(k)] * step;
            return golden_max(a, c - step, c + step, opt.theta_tol);
        },
        opt.exec);
    for (double v : refined) best = std::max(best, v);
    return std::max(best, 0.0);
}

double numerical_radius(const Operator& a, const NumericalRadiusOptions& opt) { return numerical_radius(a.mat(), opt); }

Subspace kernel_basis(const Mat& a, double tol) {
    require_nonempty(a, "kernel_basis");
    Subspace s;
    s.host_dim = static_cast<int>(a.cols());
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    double norm = sv.size() ? sv(0) : 0.0;
    s.tol = tol < 0 ? 1e-8 * norm : tol;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > s.tol && sv(i) > 0.0) ++rank;
    s.basis = svd.matrixV().rightCols(a.cols() - rank);
    return s;
}

Subspace kernel_basis(const Operator& a, double tol) { return kernel_basis(a.mat(), tol); }

double max_commutator(const std::vector<Operator>& ops) {
    double worst = 0.0;
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j)
            worst = std::max(worst, op_norm(ops[i].mat() * ops[j].mat() - ops[j].mat() * ops[i].mat()));
    return worst;
}

std::vector<std::vector<cplx>> joint_eigs(const std::vector<Operator>& ops, double commute_tol, double cluster_tol) {
    if (ops.empty()) throw std::invalid_argument("joint_eigs: empty tuple");
    const int n = ops.front().rows();
    for (const auto& op : ops)
        if (op.rows() != n || op.cols() != n) throw std::invalid_argument("joint_eigs: members must be square of equal size");
    double worst = max_commutator(ops);
    if (worst > commute_tol) {
        std::ostringstream os;
        os << "joint_eigs: tuple does not commute (worst commutator norm " << worst << ")";
        throw std::invalid_argument(os.str());
    }
    std::vector<std::vector<cplx>> out;
    Mat q = Mat::Identity(n, n);
    while (q.cols() > 0) {
        const int d = static_cast<int>(q.cols());
        std::vector<Mat> b;
        for (const auto& op : ops) b.push_back(q.adjoint() * op.mat() * q);
        Mat s = Mat::Identity(d, d);
        for (const auto& bk : b) {
            if (s.cols() == 1) break;
            Mat c = s.adjoint() * bk * s;
            Eigen::ComplexEigenSolver<Mat> es(c, true);
            Eigen::VectorXcd ev = es.eigenvalues();
            int pick = 0;
            for (int i = 1; i < ev.size(); ++i) {
                cplx x = ev(i), y = ev(pick);
                if (x.real() < y.real() - cluster_tol || (std::abs(x.real() - y.real()) <= cluster_tol && x.imag() < y.imag()))
                    pick = i;
            }
            double scale = std::max(1.0, op_norm(c));
            Mat shifted = c - ev(pick) * Mat::Identity(c.rows(), c.cols());
            Subspace e = kernel_basis(shifted, cluster_tol * scale);
            Mat basis = e.basis;
            if (basis.cols() == 0) basis = es.eigenvectors().col(pick).normalized();
            s = s * basis;
        }
        Vec v = s.col(0).normalized();
        std::vector<cplx> point;
        for (const auto& bk : b) point.push_back(v.dot(bk * v));
        out.push_back(point);
        if (d == 1) break;
        Subspace comp = kernel_basis(Mat(v.adjoint()), 0.5);
        q = q * comp.basis;
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

PsdPinv psd_pinv(const Operator& d, double rel_tol) {
    const Mat& m = d.mat();
    require_square(m, "psd_pinv");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd& ev = es.eigenvalues();
    double norm = ev.cwiseAbs().maxCoeff();
    double cut = rel_tol * norm;
    Eigen::VectorXcd inv = Eigen::VectorXcd::Zero(ev.size()), proj = Eigen::VectorXcd::Zero(ev.size());
    int rank = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) > cut && ev(i) > 0.0) {
            inv(i) = 1.0 / ev(i);
            proj(i) = 1.0;
            ++rank;
        }
    const Mat& u = es.eigenvectors();
    Mat pinv = u * inv.asDiagonal() * u.adjoint();
    Mat rp = u * proj.asDiagonal() * u.adjoint();
    pinv = 0.5 * (pinv + pinv.adjoint());
    rp = 0.5 * (rp + rp.adjoint());
    PsdPinv r{Operator(pinv, spectral_band(d, pinv)), Operator(rp, spectral_band(d, rp)), rank};
    return r;
}

}  // namespace opdil
