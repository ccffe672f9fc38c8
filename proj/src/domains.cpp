#include "opdil/domains.hpp"

#include "opdil/opcore.hpp"
#include "search.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace opdil {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

cplx minor2(const Mat& a, int i, int j) { return a(i, i) * a(j, j) - a(i, j) * a(j, i); }

std::pair<cplx, cplx> quadratic_roots(cplx b, cplx c) {
    // t^2 - b t + c
    cplx d = std::sqrt(b * b - 4.0 * c);
    cplx r1 = 0.5 * (b + d), r2 = 0.5 * (b - d);
    // recompute the small root from the product to avoid cancellation
    if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
    if (std::abs(r1) > 0.0) r2 = c / r1;
    return {r1, r2};
}

double coord_error(const std::vector<cplx>& got, const std::vector<cplx>& want) {
    double e = 0.0;
    for (size_t i = 0; i < got.size(); ++i) e = std::max(e, std::abs(got[i] - want[i]));
    return e;
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

BlockStructure::BlockStructure(int n_, std::vector<int> r_) : n(n_), s(static_cast<int>(r_.size())), r(std::move(r_)) {
    if (n < 1 || s < 1) throw std::invalid_argument("block structure: n and s must be positive");
    for (int ri : r)
        if (ri < 1) throw std::invalid_argument("block structure: block sizes must be positive");
    if (std::accumulate(r.begin(), r.end(), 0) != n) throw std::invalid_argument("block structure: sum of r_i must equal n");
}

BlockStructure BlockStructure::parse(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoi(tok, &used));
            if (used != tok.size() && tok.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("block structure: bad integer '" + tok + "'");
        }
    }
    if (v.size() < 3) throw std::invalid_argument("block structure: expected n,s,r1,...,rs");
    if (static_cast<int>(v.size()) != v[1] + 2) throw std::invalid_argument("block structure: s does not match the number of r_i");
    return BlockStructure(v[0], std::vector<int>(v.begin() + 2, v.end()));
}

std::string BlockStructure::str() const {
    std::ostringstream os;
    os << "E(" << n << ";" << s;
    for (size_t i = 0; i < r.size(); ++i) os << (i == 0 ? ";" : ",") << r[i];
    os << ")";
    return os.str();
}

BlockStructure gamma7_structure() { return BlockStructure(3, {1, 1, 1}); }
BlockStructure gamma5_structure() { return BlockStructure(3, {1, 2}); }

MuResult mu_E_detail(const Mat& a, const BlockStructure& e, const MuOptions& opt) {
    if (a.rows() != a.cols() || a.rows() != e.n) {
        std::ostringstream os;
        os << "mu_E: matrix is " << a.rows() << "x" << a.cols() << " but structure " << e.str() << " needs " << e.n << "x"
           << e.n;
        throw std::invalid_argument(os.str());
    }
    if (!a.allFinite()) throw std::invalid_argument("mu_E: non-finite entries");
    MuResult res;
    if (a.cwiseAbs().maxCoeff() == 0.0) return res;
    if (e.s == 1) {
        res.value = spectral_radius(a);
        return res;
    }
    const int dims = e.s - 1;
    std::vector<int> block_of;
    for (int k = 0; k < e.s; ++k)
        for (int j = 0; j < e.r[static_cast<size_t>(k)]; ++j) block_of.push_back(k);

    auto rho_at = [&](const std::vector<double>& th) {
        Vec d(e.n);
        for (int i = 0; i < e.n; ++i) {
            int b = block_of[static_cast<size_t>(i)];
            d(i) = b == 0 ? cplx(1.0) : std::polar(1.0, th[static_cast<size_t>(b - 1)]);
        }
        return spectral_radius(Mat(a * d.asDiagonal()));
    };

    const long cap = 1L << 20;
    auto points = [&](int g) {
        long t = 1;
        for (int k = 0; k < dims; ++k) t *= g;
        return t;
    };
    int g = opt.grid;
    while (g > 8 && points(g) > cap / 4) g /= 2;

    auto estimate = [&](int gs, std::vector<double>& arg) {
        const long total = points(gs);
        auto angles = [&](long idx) {
            std::vector<double> th(static_cast<size_t>(dims));
            for (int k = 0; k < dims; ++k) {
                th[static_cast<size_t>(k)] = kTwoPi * static_cast<double>(idx % gs) / gs;
                idx /= gs;
            }
            return th;
        };
        std::vector<double> vals = evaluate_grid(static_cast<int>(total), [&](int i) { return rho_at(angles(i)); }, opt.exec);
        std::vector<int> order(vals.size());
        std::iota(order.begin(), order.end(), 0);
        const int k = std::min<int>(opt.refine, static_cast<int>(order.size()));
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int x, int y) {
            return vals[static_cast<size_t>(x)] > vals[static_cast<size_t>(y)] ||
                   (vals[static_cast<size_t>(x)] == vals[static_cast<size_t>(y)] && x < y);
        });
        std::vector<std::vector<double>> starts;
        for (int i = 0; i < k; ++i) starts.push_back(angles(order[static_cast<size_t>(i)]));
        std::vector<std::vector<double>> ends(starts.size());
        std::vector<double> refined = evaluate_grid(
            k,
            [&](int i) {
                auto [v, x] = detail::compass_max(rho_at, starts[static_cast<size_t>(i)], kTwoPi / gs, 1e-9);
                ends[static_cast<size_t>(i)] = x;
                return v;
            },
            opt.exec);
        double best = vals[static_cast<size_t>(order[0])];
        arg = starts[0];
        for (int i = 0; i < k; ++i)
            if (refined[static_cast<size_t>(i)] > best) {
                best = refined[static_cast<size_t>(i)];
                arg = ends[static_cast<size_t>(i)];
            }
        return best;
    };

    std::vector<double> arg;
    double prev = estimate(g, arg);
    res = {prev, g, arg};
    while (2 * g <= opt.max_grid && points(2 * g) <= cap) {
        g *= 2;
        double cur = estimate(g, arg);
        if (cur > res.value) res = {cur, g, arg};
        res.grid = g;
        if (std::abs(cur - prev) <= opt.tol / 2) break;
        prev = cur;
    }
    return res;
}

double mu_E(const Mat& a, const BlockStructure& e, double tol, Exec exec) {
    if (!(tol > 0.0) || tol > 1e-2) throw std::invalid_argument("mu_E: tol must lie in (0, 1e-2]");
    MuOptions opt;
    opt.tol = tol;
    opt.exec = exec;
    return mu_E_detail(a, e, opt).value;
}

DomainPoint::DomainPoint(TupleKind k, std::vector<cplx> x) : kind(k), coords(std::move(x)) {
    int want = 0;
    switch (kind) {
        case TupleKind::gamma7: want = 7; break;
        case TupleKind::gamma5: want = 5; break;
        case TupleKind::tetra:
        case TupleKind::penta: want = 3; break;
        default: throw std::invalid_argument("domain point: kind must be gamma7, gamma5, tetra or penta");
    }
    if (static_cast<int>(coords.size()) != want) {
        std::ostringstream os;
        os << "domain point: " << to_string(kind) << " needs " << want << " coordinates, got " << coords.size();
        throw std::invalid_argument(os.str());
    }
    for (cplx c : coords)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw std::invalid_argument("domain point: non-finite coordinate");
}

std::vector<cplx> gamma7_coords(const Mat& a) {
    if (a.rows() != 3 || a.cols() != 3) throw std::invalid_argument("gamma7_coords: need a 3x3 matrix");
    return {a(0, 0), a(1, 1), minor2(a, 0, 1), a(2, 2), minor2(a, 0, 2), minor2(a, 1, 2), a.determinant()};
}

std::vector<cplx> gamma5_coords(const Mat& a) {
    if (a.rows() != 3 || a.cols() != 3) throw std::invalid_argument("gamma5_coords: need a 3x3 matrix");
    return {a(0, 0), minor2(a, 0, 1) + minor2(a, 0, 2), a.determinant(), a(1, 1) + a(2, 2), minor2(a, 1, 2)};
}

std::vector<cplx> tetra_coords(const Mat& a) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("tetra_coords: need a 2x2 matrix");
    return {a(0, 0), a(1, 1), a.determinant()};
}

std::vector<cplx> penta_coords(const Mat& a) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("penta_coords: need a 2x2 matrix");
    return {a(1, 0), a.trace(), a.determinant()};
}

std::vector<cplx> domain_coords(TupleKind kind, const Mat& a) {
    switch (kind) {
        case TupleKind::gamma7: return gamma7_coords(a);
        case TupleKind::gamma5: return gamma5_coords(a);
        case TupleKind::tetra: return tetra_coords(a);
        case TupleKind::penta: return penta_coords(a);
        default: throw std::invalid_argument("domain_coords: unsupported kind " + to_string(kind));
    }
}

DomainPoint pi_point(cplx a, cplx b) {
    return DomainPoint(TupleKind::gamma7, {a, b, a * b, a * b, a * a * b, a * b * b, a * a * b * b});
}

DomainPoint pi_eta_point(const DomainPoint& x, cplx eta) {
    if (x.kind != TupleKind::gamma7) throw std::invalid_argument("pi_eta_point: needs a gamma7 point");
    return DomainPoint(TupleKind::gamma5, {x.x(1), x.x(3) + eta * x.x(5), eta * x.x(7), x.x(2) + eta * x.x(4), eta * x.x(6)});
}

Psi3Result psi3_supnorm(const DomainPoint& x, int grid) {
    if (x.kind != TupleKind::gamma7) throw std::invalid_argument("psi3_supnorm: needs a gamma7 point");
    if (grid < 4) throw std::invalid_argument("psi3_supnorm: grid must be at least 4");
    auto psi = [&](double tz, double tw, bool strict) {
        cplx z = std::polar(1.0, tz), w = std::polar(1.0, tw);
        cplx den = 1.0 - z * x.x(1) - w * x.x(2) + z * w * x.x(3);
        cplx num = x.x(4) - z * x.x(5) - w * x.x(6) + z * w * x.x(7);
        if (std::abs(den) <= 1e-12) {
            if (strict) throw std::domain_error("psi3_supnorm: pole on torus");
            return -1.0;
        }
        return std::abs(num / den);
    };
    const double step = kTwoPi / grid;
    const long total = static_cast<long>(grid) * grid;
    std::vector<double> vals = evaluate_grid(static_cast<int>(total), [&](int i) { return psi((i % grid) * step, (i / grid) * step, true); });
    int best = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    std::vector<double> start{(best % grid) * step, (best / grid) * step};
    auto [v, arg] = detail::compass_max([&](const std::vector<double>& t) { return psi(t[0], t[1], false); }, start, step / 2, 1e-10);
    Psi3Result r;
    r.value = std::max(v, vals[static_cast<size_t>(best)]);
    r.grid = grid;
    r.z_angle = arg[0];
    r.w_angle = arg[1];
    return r;
}

double tetra_sup(cplx x1, cplx x2, cplx x3, int grid) {
    auto f = [&](double t) {
        cplx z = std::polar(1.0, t);
        cplx den = 1.0 - x1 * z, num = x2 - z * x3;
        if (std::abs(den) <= 1e-14) return std::abs(num) <= 1e-12 ? -1.0 : std::numeric_limits<double>::infinity();
        return std::abs(num) / std::abs(den);
    };
    // offset grid: a removable pole at z = 1/x1 is never sampled exactly
    const double step = kTwoPi / grid;
    std::vector<double> vals(static_cast<size_t>(grid));
    for (int k = 0; k < grid; ++k) vals[static_cast<size_t>(k)] = f((k + 0.5) * step);
    double best = *std::max_element(vals.begin(), vals.end());
    if (!std::isfinite(best)) return best;
    for (int k = 0; k < grid; ++k) {
        double v = vals[static_cast<size_t>(k)];
        if (v < vals[static_cast<size_t>((k + grid - 1) % grid)] || v < vals[static_cast<size_t>((k + 1) % grid)]) continue;
        double c = (k + 0.5) * step;
        auto [g, t] = detail::golden_max(f, c - step, c + step, 1e-12);
        (void)t;
        best = std::max(best, g);
    }
    return best;
}

bool in_tetrablock(cplx x1, cplx x2, cplx x3, double tol) {
    if (std::abs(x1) > 1 + tol || std::abs(x2) > 1 + tol || std::abs(x3) > 1 + tol) return false;
    return tetra_sup(x1, x2, x3) <= 1 + tol;
}

bool in_symmetrized_bidisc(cplx s, cplx p, double tol) {
    return std::abs(s) <= 2 + tol && std::abs(p) <= 1 + tol && std::abs(s - std::conj(s) * p) <= 1 - std::norm(p) + tol;
}

double penta_a_bound(cplx s, cplx p, double tol) {
    if (!in_symmetrized_bidisc(s, p, tol)) return -1.0;
    auto [l1, l2] = quadratic_roots(s, p);
    double c = std::sqrt(std::max(0.0, (1.0 - std::norm(l1)) * (1.0 - std::norm(l2))));
    return 0.5 * (c + std::sqrt(std::abs(s * s - 4.0 * p) + c * c));
}

bool on_K(const DomainPoint& x, double tol) {
    if (x.kind != TupleKind::gamma7) return false;
    return near(x.x(1), std::conj(x.x(6)) * x.x(7), tol) && near(x.x(3), std::conj(x.x(4)) * x.x(7), tol) &&
           near(x.x(5), std::conj(x.x(2)) * x.x(7), tol) && std::abs(std::abs(x.x(7)) - 1.0) <= tol;
}

bool on_K1(const DomainPoint& x, double tol) {
    if (x.kind != TupleKind::gamma5) return false;
    cplx x1 = x[0], x2 = x[1], x3 = x[2], y1 = x[3], y2 = x[4];
    return near(x1, std::conj(y2) * x3, tol) && near(x2, std::conj(y1) * x3, tol) && std::abs(std::abs(x3) - 1.0) <= tol;
}

bool on_K0(const DomainPoint& x, double tol) {
    if (x.kind != TupleKind::penta) return false;
    cplx x1 = x[0], x2 = x[1], x3 = x[2];
    if (std::abs(x2) > 2 + tol || std::abs(std::abs(x3) - 1.0) > tol) return false;
    if (!near(x2, std::conj(x2) * x3, tol)) return false;
    double want = std::sqrt(std::max(0.0, 1.0 - 0.25 * std::norm(x2)));
    return std::abs(std::abs(x1) - want) <= tol;
}

namespace {

const MuOptions& precise_mu() {
    static const MuOptions o = [] {
        MuOptions m;
        m.tol = 1e-8;
        return m;
    }();
    return o;
}

Certificate finish(const DomainPoint& x, Mat a, double constraint) {
    Certificate c;
    c.residual = coord_error(domain_coords(x.kind, a), x.coords);
    c.constraint_value = constraint;
    c.a = std::move(a);
    c.success = c.residual <= 1e-6 && c.constraint_value <= 1 + 1e-6;
    return c;
}

Certificate better(Certificate a, Certificate b) {
    if (a.a.size() == 0) return b;
    if (b.a.size() == 0) return a;
    if (a.success != b.success) return a.success ? a : b;
    double sa = a.constraint_value + 1e3 * a.residual, sb = b.constraint_value + 1e3 * b.residual;
    return sa <= sb ? a : b;
}

bool is_pi_image(const DomainPoint& x, double tol) {
    cplx a = x.x(1), b = x.x(2);
    return near(x.x(3), a * b, tol) && near(x.x(4), a * b, tol) && near(x.x(5), a * a * b, tol) && near(x.x(6), a * b * b, tol) &&
           near(x.x(7), a * a * b * b, tol);
}

bool is_product_form(const DomainPoint& x, double tol) {
    return near(x[1], x[0] * x[3], tol) && near(x[2], x[0] * x[4], tol);
}

// Canonical representatives of the generic orbits of the symmetrization map
// under the similarities that commute with the block structure.
std::vector<Mat> gamma7_orbits(const DomainPoint& x) {
    cplx x1 = x.x(1), x2 = x.x(2), x4 = x.x(4);
    cplx p12 = x1 * x2 - x.x(3), p13 = x1 * x4 - x.x(5), p23 = x2 * x4 - x.x(6);
    cplx prod = p12 * p13 * p23;
    if (std::abs(prod) <= 1e-12) return {};
    cplx c = x.x(7) - (x1 * x2 * x4 - x1 * p23 - x2 * p13 - x4 * p12);
    auto [u1, u2] = quadratic_roots(c, prod);
    std::vector<Mat> out;
    for (cplx u : {u1, u2}) {
        Mat a(3, 3);
        a << x1, 1.0, 1.0, p12, x2, u / p13, p13, p23 * p13 / u, x4;
        out.push_back(a);
    }
    return out;
}

Mat gamma5_orbit(const DomainPoint& x) {
    cplx x1 = x[0], x2 = x[1], x3 = x[2], y1 = x[3], y2 = x[4];
    Mat a(3, 3);
    a << x1, 0.0, 1.0, x3 - x1 * y2, 0.0, -y2, x1 * y1 - x2, 1.0, y1;
    return a;
}

// Fibres of the gamma5 map that may contain orbits other than the generic one.
bool gamma5_degenerate(const DomainPoint& x, double tol) {
    cplx x1 = x[0], x2 = x[1], x3 = x[2], y1 = x[3], y2 = x[4];
    if (std::abs(y1 * y1 - 4.0 * y2) <= tol) return true;
    auto [l1, l2] = quadratic_roots(y1, y2);
    cplx rc = x1 * y1 - x2, radjc = x1 * y2 - x3;
    return near(radjc, l1 * rc, tol) || near(radjc, l2 * rc, tol);
}

struct PenaltyFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const DomainPoint* x = nullptr;
    int n_in = 0;
    int n_out = 0;

    int inputs() const { return n_in; }
    int values() const { return n_out; }

    Mat build(const Eigen::VectorXd& p) const {
        Mat a = Mat::Zero(3, 3);
        int k = 0;
        auto next = [&]() {
            cplx v(p(k), p(k + 1));
            k += 2;
            return v;
        };
        if (x->kind == TupleKind::gamma7) {
            a(0, 0) = x->x(1);
            a(1, 1) = x->x(2);
            a(2, 2) = x->x(4);
        } else {
            a(0, 0) = (*x)[0];
            a(1, 1) = next();
            a(2, 2) = (*x)[3] - a(1, 1);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) a(i, j) = next();
        return a;
    }

    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
        Mat a = build(p);
        std::vector<cplx> got = domain_coords(x->kind, a);
        f.setZero(n_out);
        int k = 0;
        for (size_t i = 0; i < got.size(); ++i) {
            cplx e = got[i] - x->coords[i];
            f(k++) = e.real();
            f(k++) = e.imag();
        }
        MuOptions coarse;
        coarse.grid = 12;
        coarse.max_grid = 12;
        coarse.refine = 1;
        coarse.exec = Exec::serial;
        BlockStructure e = x->kind == TupleKind::gamma7 ? gamma7_structure() : gamma5_structure();
        double mu = mu_E_detail(a, e, coarse).value;
        f(k) = 10.0 * std::max(0.0, mu - (1.0 - 1e-4));
        return 0;
    }
};

Certificate penalty_search(const DomainPoint& x, int starts) {
    PenaltyFunctor fn;
    fn.x = &x;
    fn.n_in = x.kind == TupleKind::gamma7 ? 12 : 14;
    fn.n_out = std::max(fn.n_in, 2 * static_cast<int>(x.coords.size()) + 1);
    BlockStructure e = x.kind == TupleKind::gamma7 ? gamma7_structure() : gamma5_structure();
    std::mt19937_64 rng(20240917);
    std::normal_distribution<double> nd(0.0, 0.5);
    Certificate best;
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd p(fn.n_in);
        for (int i = 0; i < fn.n_in; ++i) p(i) = nd(rng);
        Eigen::NumericalDiff<PenaltyFunctor> nd_fn(fn);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<PenaltyFunctor>> lm(nd_fn);
        lm.parameters.maxfev = 3000;
        lm.minimize(p);
        Mat a = fn.build(p);
        best = better(best, finish(x, a, mu_E_detail(a, e, precise_mu()).value));
        if (best.success) break;
    }
    return best;
}

Certificate tetra_certificate(const DomainPoint& x) {
    cplx x1 = x[0], x2 = x[1];
    cplx p = x1 * x2 - x[2];
    if (std::abs(p) == 0.0) {
        Mat a = Mat::Zero(2, 2);
        a(0, 0) = x1;
        a(1, 1) = x2;
        return finish(x, a, op_norm(a));
    }
    // only |a12| matters up to diagonal unitary similarity, and the norm is
    // log-convex in the remaining diagonal scaling
    cplx w = std::sqrt(p);
    auto build = [&](double t) {
        Mat a(2, 2);
        a << x1, w * std::exp(t), w * std::exp(-t), x2;
        return a;
    };
    auto [v, t] = detail::golden_max([&](double s) { return -op_norm(build(s)); }, -30.0, 30.0, 1e-10);
    (void)v;
    Mat a = build(t);
    return finish(x, a, op_norm(a));
}

// Every A with eigenvalues l1, l2 is unitarily similar to [[l1, c], [0, l2]],
// and over that orbit max |a21| = (c + sqrt(|l1 - l2|^2 + c^2)) / 2. Taking the
// smallest c that reaches |target| gives the realization of least norm.
Mat penta_construct(cplx l1, cplx l2, cplx target) {
    const cplx d = l2 - l1;
    const double dm = std::abs(d), m = std::abs(target);
    const double c = 2.0 * m > dm ? (4.0 * m * m - dm * dm) / (4.0 * m) : 0.0;
    // |y* T x| = sin t (|d| cos t + c sin t) for x = (cos t, sin t e^{i psi}), y its complement
    const double amp = 0.5 * std::hypot(dm, c), phi0 = std::atan2(c, dm);
    double t = std::numbers::pi / 2;
    if (amp > 0.0) t = 0.5 * (phi0 + std::asin(std::clamp((m - 0.5 * c) / amp, -1.0, 1.0)));
    cplx e = 1.0;
    if (dm > 0.0) e = -d / dm;  // aligns -c e^{i psi} with d
    Mat tri(2, 2);
    tri << l1, c, 0.0, l2;
    Vec xv(2), yv(2);
    xv << std::cos(t), std::sin(t) * e;
    yv << -std::conj(xv(1)), std::conj(xv(0));
    Mat w(2, 2);
    w.col(0) = xv;
    w.col(1) = yv;
    Mat a = w.adjoint() * tri * w;
    // diagonal unitary similarity fixes the phase of a21
    if (std::abs(a(1, 0)) > 0.0 && m > 0.0) {
        cplx rot = (target / m) / (a(1, 0) / std::abs(a(1, 0)));
        a(1, 0) *= rot;
        a(0, 1) /= rot;
    }
    return a;
}

Certificate penta_certificate(const DomainPoint& x) {
    auto [l1, l2] = quadratic_roots(x[1], x[2]);
    Mat a = penta_construct(l1, l2, x[0]);
    return finish(x, a, op_norm(a));
}

}  // namespace

Certificate certificate_search(const DomainPoint& x, int budget) {
    if (budget < 1) throw std::invalid_argument("certificate_search: budget must be positive");
    switch (x.kind) {
        case TupleKind::tetra: return tetra_certificate(x);
        case TupleKind::penta: return penta_certificate(x);
        case TupleKind::gamma7: {
            if (is_pi_image(x, 1e-10)) {
                cplx a = x.x(1), b = x.x(2);
                Mat d = Mat::Zero(3, 3);
                d(0, 0) = a;
                d(1, 1) = b;
                d(2, 2) = a * b;
                return finish(x, d, std::max({std::abs(a), std::abs(b), std::abs(a * b)}));
            }
            std::vector<Mat> orbits = gamma7_orbits(x);
            Certificate best;
            for (const Mat& a : orbits) best = better(best, finish(x, a, mu_E_detail(a, gamma7_structure(), precise_mu()).value));
            if (best.success || !orbits.empty()) return best;
            return better(best, penalty_search(x, budget));
        }
        case TupleKind::gamma5: {
            if (is_product_form(x, 1e-10)) {
                auto [l1, l2] = quadratic_roots(x[3], x[4]);
                Mat d = Mat::Zero(3, 3);
                d(0, 0) = x[0];
                d(1, 1) = l1;
                d(2, 2) = l2;
                return finish(x, d, std::max({std::abs(x[0]), std::abs(l1), std::abs(l2)}));
            }
            Mat a = gamma5_orbit(x);
            Certificate best = finish(x, a, mu_E_detail(a, gamma5_structure(), precise_mu()).value);
            if (best.success || !gamma5_degenerate(x, 1e-9)) return best;
            return better(best, penalty_search(x, budget));
        }
        default: throw std::invalid_argument("certificate_search: unsupported kind");
    }
}

namespace {

void add_tetra_item(CheckReport& r, const std::string& label, cplx a, cplx b, cplx c, double tol) {
    double worst = std::max({std::abs(a), std::abs(b), std::abs(c)});
    double v = worst > 1 + tol ? worst : tetra_sup(a, b, c);
    r.add_le(label, v, 1 + tol);
}

void add_certificate_items(CheckReport& r, const Certificate& c, const std::string& what, double tol) {
    r.add_le("certificate coordinate error", c.residual, 1e-6);
    r.add_le("certificate " + what, c.constraint_value, 1 + tol);
}

void conclude(CheckReport& r, const std::string& conclusion) {
    r.conclusion = conclusion;
    r.finalize();
    if (conclusion == "unknown" || conclusion == "outside") r.verdict = Verdict::fail;
}

bool all_pass(const CheckReport& r) {
    return std::all_of(r.items.begin(), r.items.end(), [](const CheckItem& i) { return i.pass; });
}

CheckReport tetra_membership(const DomainPoint& x, double tol) {
    CheckReport r;
    r.name = "membership(tetra)";
    r.add_le("|x1|", std::abs(x[0]), 1 + tol);
    r.add_le("|x2|", std::abs(x[1]), 1 + tol);
    r.add_le("|x3|", std::abs(x[2]), 1 + tol);
    add_tetra_item(r, "sup_T |x2 - z x3| / |1 - x1 z|", x[0], x[1], x[2], tol);
    conclude(r, all_pass(r) ? "inside" : "outside");
    return r;
}

CheckReport penta_membership(const DomainPoint& x, double tol) {
    CheckReport r;
    r.name = "membership(penta)";
    r.add_le("|x1|", std::abs(x[0]), 1 + tol);
    r.add_le("|x2|", std::abs(x[1]), 2 + tol);
    cplx s = x[1], p = x[2];
    r.add_le("|x2 - conj(x2) x3| + |x3|^2", std::abs(s - std::conj(s) * p) + std::norm(p), 1 + tol);
    if (!all_pass(r)) {
        conclude(r, "outside");
        return r;
    }
    r.add_le("|x1| - max |a21| over contractions with (tr, det) = (x2, x3)", std::abs(x[0]) - penta_a_bound(s, p, tol), tol);
    if (!all_pass(r)) {
        conclude(r, "outside");
        return r;
    }
    Certificate c = certificate_search(x);
    add_certificate_items(r, c, "norm", tol);
    bool k0 = on_K0(x, tol);
    r.add_note(std::string("on K0: ") + (k0 ? "yes" : "no"));
    conclude(r, all_pass(r) ? (k0 ? "boundary" : "inside") : "outside");
    return r;
}

CheckReport gamma7_membership(const DomainPoint& x, double tol) {
    CheckReport r;
    r.name = "membership(gamma7)";
    for (int i : {1, 2, 4, 7}) r.add_le("|x" + std::to_string(i) + "|", std::abs(x.x(i)), 1 + tol);
    add_tetra_item(r, "tetra(x1,x2,x3)", x.x(1), x.x(2), x.x(3), tol);
    add_tetra_item(r, "tetra(x1,x4,x5)", x.x(1), x.x(4), x.x(5), tol);
    add_tetra_item(r, "tetra(x2,x4,x6)", x.x(2), x.x(4), x.x(6), tol);
    add_tetra_item(r, "tetra(x1,x6,x7)", x.x(1), x.x(6), x.x(7), tol);
    add_tetra_item(r, "tetra(x2,x5,x7)", x.x(2), x.x(5), x.x(7), tol);
    add_tetra_item(r, "tetra(x3,x4,x7)", x.x(3), x.x(4), x.x(7), tol);
    const bool k = on_K(x, tol);
    auto inside = [&] { return k ? "boundary" : "inside"; };
    try {
        Psi3Result psi = psi3_supnorm(x, 64);
        r.add_note("psi3 sup over torus grid " + std::to_string(psi.grid) + ": " + fmt(psi.value) + " (informational)");
    } catch (const std::domain_error&) {
        r.add_note("psi3 has a pole on the torus sample (informational)");
    }
    if (!all_pass(r)) {
        conclude(r, "outside");
        return r;
    }
    auto zero = [&](int i) { return std::abs(x.x(i)) <= tol; };
    if ((zero(2) && zero(3) && zero(4) && zero(5)) || (zero(1) && zero(3) && zero(4) && zero(6)) ||
        (zero(1) && zero(2) && zero(5) && zero(6))) {
        r.add_note("axis point: decided by the matching tetrablock criterion");
        conclude(r, inside());
        return r;
    }
    if (is_pi_image(x, 1e-10)) {
        r.add_note("point is pi(x1, x2) with |x1|, |x2| <= 1");
        conclude(r, inside());
        return r;
    }
    Certificate c = certificate_search(x);
    add_certificate_items(r, c, "mu", tol);
    if (all_pass(r)) {
        conclude(r, inside());
        return r;
    }
    // with all off-diagonal products nonzero, the two orbit representatives exhaust the fibre
    if (!gamma7_orbits(x).empty()) {
        r.add_note("fibre consists of two similarity orbits; both have mu > 1");
        conclude(r, "outside");
        return r;
    }
    r.add_note("degenerate fibre: no certificate found and no disproof available");
    conclude(r, "unknown");
    return r;
}

CheckReport gamma5_membership(const DomainPoint& x, double tol) {
    CheckReport r;
    r.name = "membership(gamma5)";
    cplx x1 = x[0], x2 = x[1], x3 = x[2], y1 = x[3], y2 = x[4];
    r.add_le("|x1|", std::abs(x1), 1 + tol);
    r.add_le("|x3|", std::abs(x3), 1 + tol);
    r.add_le("|x2|", std::abs(x2), 2 + tol);
    r.add_le("|y1 - conj(y1) y2| + |y2|^2", std::abs(y1 - std::conj(y1) * y2) + std::norm(y2), 1 + tol);
    r.add_le("|y1|", std::abs(y1), 2 + tol);
    add_tetra_item(r, "tetra(x1,y2,x3)", x1, y2, x3, tol);
    add_tetra_item(r, "tetra(x2/2,y1/2,x3)", 0.5 * x2, 0.5 * y1, x3, tol);
    const bool k1 = on_K1(x, tol);
    auto inside = [&] { return k1 ? "boundary" : "inside"; };
    if (!all_pass(r)) {
        conclude(r, "outside");
        return r;
    }
    auto zero = [&](cplx v) { return std::abs(v) <= tol; };
    if ((zero(x2) && zero(y1)) || (zero(x1) && zero(y2))) {
        r.add_note("axis point: decided by the matching tetrablock criterion");
        conclude(r, inside());
        return r;
    }
    if (is_product_form(x, 1e-10)) {
        r.add_note("product form x2 = x1 y1, x3 = x1 y2: inside iff |x1| <= 1 and (y1, y2) in the symmetrized bidisc");
        conclude(r, inside());
        return r;
    }
    Certificate c = certificate_search(x);
    add_certificate_items(r, c, "mu", tol);
    if (all_pass(r)) {
        conclude(r, inside());
        return r;
    }
    if (!gamma5_degenerate(x, 1e-9)) {
        r.add_note("fibre is a single similarity orbit with mu > 1");
        conclude(r, "outside");
        return r;
    }
    r.add_note("degenerate fibre: no certificate found and no disproof available");
    conclude(r, "unknown");
    return r;
}

}  // namespace

CheckReport membership(const DomainPoint& x, double tol) {
    switch (x.kind) {
        case TupleKind::tetra: return tetra_membership(x, tol);
        case TupleKind::penta: return penta_membership(x, tol);
        case TupleKind::gamma7: return gamma7_membership(x, tol);
        case TupleKind::gamma5: return gamma5_membership(x, tol);
        default: throw std::invalid_argument("membership: unsupported kind");
    }
}

}  // namespace opdil
