#include "opdil/domains.hpp"
#include "opdil/opcore.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace opdil;
using namespace testsupport;

namespace {

Mat diag3(cplx a, cplx b, cplx c) {
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return d;
}

bool accepted(const CheckReport& r) { return r.conclusion == "inside" || r.conclusion == "boundary"; }

}  // namespace

TEST_CASE("block structure parsing") {
    BlockStructure e = BlockStructure::parse("3,2,1,2");
    CHECK(e.n == 3);
    CHECK(e.s == 2);
    CHECK(e.r == std::vector<int>{1, 2});
    CHECK(e.str() == "E(3;2;1,2)");
    CHECK_THROWS(BlockStructure::parse("3,2,1,1"));
    CHECK_THROWS(BlockStructure::parse("3,3,1,1"));
    CHECK_THROWS(BlockStructure::parse("3,x,1"));
    CHECK_THROWS(mu_E(Mat::Zero(2, 2), gamma7_structure()));
}

TEST_CASE("mu_E closed forms") {
    CHECK(mu_E(Mat::Zero(3, 3), gamma7_structure()) == 0.0);
    for (double a : {0.3, 0.6, 0.9})
        for (double b : {0.3, 0.6, 0.9})
            for (double c : {0.3, 0.6, 0.9}) CHECK(std::abs(mu_E(diag3(a, b, c), gamma7_structure()) - std::max({a, b, c})) < 1e-4);

    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        cplx a = random_disc(rng, 1.5);
        Mat bb = random_matrix(rng, 2, 2);
        Mat m = Mat::Zero(3, 3);
        m(0, 0) = a;
        m.bottomRightCorner(2, 2) = bb;
        double expect = std::max(std::abs(a), spectral_radius(bb));
        CHECK(std::abs(mu_E(m, gamma5_structure()) - expect) < 1e-4);
    }
    // one full block is the spectral radius, all-scalar blocks bounded by the norm
    Mat g = random_matrix(rng, 3, 3);
    CHECK(std::abs(mu_E(g, BlockStructure(3, {3})) - spectral_radius(g)) < 1e-12);
    double m7 = mu_E(g, gamma7_structure());
    CHECK(m7 >= spectral_radius(g) - 1e-9);
    CHECK(m7 <= op_norm(g) + 1e-9);
}

TEST_CASE("mu_E against a direct zero search") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 6; ++t) {
        Mat a = random_matrix(rng, 3, 3);
        double oracle = mu_zero_search_312(a);
        double mu = mu_E(a, gamma5_structure(), 1e-6);
        CHECK(std::abs(mu - oracle) <= 2e-3 * std::max(1.0, oracle));
    }
}

TEST_CASE("mu_E homogeneity and execution modes") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 10; ++t) {
        Mat a = random_matrix(rng, 3, 3);
        cplx c = random_disc(rng, 3.0);
        const double tol = 1e-4;
        CHECK(std::abs(mu_E(c * a, gamma7_structure(), tol) - std::abs(c) * mu_E(a, gamma7_structure(), tol)) <=
              2 * tol * std::max(1.0, std::abs(c)));
        CHECK(mu_E(a, gamma7_structure(), tol, Exec::serial) == mu_E(a, gamma7_structure(), tol, Exec::parallel));
    }
}

TEST_CASE("coordinate maps") {
    Mat a(3, 3);
    a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
    auto x = gamma7_coords(a);
    CHECK(x[0] == cplx(1));
    CHECK(x[2] == cplx(1 * 5 - 2 * 4));
    CHECK(x[4] == cplx(1 * 10 - 3 * 7));
    CHECK(x[5] == cplx(5 * 10 - 6 * 8));
    CHECK(std::abs(x[6] - cplx(-3)) < 1e-12);
    auto y = gamma5_coords(a);
    CHECK(y[1] == x[2] + x[4]);
    CHECK(y[3] == cplx(15));
    CHECK(y[4] == x[5]);
    Mat p(2, 2);
    p << 1, 2, 3, 4;
    CHECK(penta_coords(p) == std::vector<cplx>{3, 5, -2});
    CHECK(tetra_coords(p) == std::vector<cplx>{1, 4, -2});
    CHECK_THROWS(DomainPoint(TupleKind::gamma7, {1, 2, 3}));

    // pi(a, b) is the image of diag(a, b, ab)
    cplx s(0.3, 0.2), t(-0.5, 0.1);
    auto img = gamma7_coords(diag3(s, t, s * t));
    DomainPoint pp = pi_point(s, t);
    for (int i = 0; i < 7; ++i) CHECK(std::abs(img[static_cast<size_t>(i)] - pp[i]) < 1e-15);
}

TEST_CASE("psi3 supnorm") {
    DomainPoint zero(TupleKind::gamma7, std::vector<cplx>(7, 0.0));
    CHECK(psi3_supnorm(zero).value == 0.0);
    CHECK(std::abs(psi3_supnorm(pi_point(0.5, 0.5)).value - 0.25) < 1e-12);

    cplx x1(0.3, 0.1), x6(0.2, -0.4), x7(0.1, 0.05);
    DomainPoint axis(TupleKind::gamma7, {x1, 0, 0, 0, 0, x6, x7});
    double grid_max = 0.0;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) {
            cplx z = std::polar(1.0, 2 * M_PI * i / 200), w = std::polar(1.0, 2 * M_PI * j / 200);
            grid_max = std::max(grid_max, std::abs(-w * x6 + z * w * x7) / std::abs(1.0 - z * x1));
        }
    double v = psi3_supnorm(axis).value;
    CHECK(v >= grid_max - 1e-12);
    CHECK(v <= grid_max + 1e-3);

    DomainPoint pole(TupleKind::gamma7, {1, 0, 0, 0.5, 0, 0, 0});
    CHECK_THROWS_WITH(psi3_supnorm(pole), doctest::Contains("pole on torus"));
}

TEST_CASE("tetrablock criterion against the closed form") {
    std::mt19937_64 rng(34);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        cplx x1 = random_disc(rng, 1.2), x2 = random_disc(rng, 1.2), x3 = random_disc(rng, 1.1);
        double gap = tetra_closed_form_gap(x1, x2, x3);
        if (std::abs(gap) < 1e-3) continue;
        ++checked;
        CHECK(in_tetrablock(x1, x2, x3) == (gap < 0));
    }
    CHECK(checked > 300);

    // points realized by contractions
    for (int t = 0; t < 100; ++t) {
        Mat a = random_contraction(rng, 2, 0.999);
        auto x = tetra_coords(a);
        CHECK(in_tetrablock(x[0], x[1], x[2]));
        Certificate c = certificate_search(DomainPoint(TupleKind::tetra, x));
        CHECK(c.success);
        CHECK(c.constraint_value <= op_norm(a) + 1e-8);
    }
}

TEST_CASE("tetra membership examples") {
    CheckReport r = membership(DomainPoint(TupleKind::tetra, {1, 1, 1}));
    CHECK(r.conclusion == "inside");
    CHECK(r.passed());
    CheckReport o = membership(DomainPoint(TupleKind::tetra, {1, 0.5, 0}));
    CHECK(o.conclusion == "outside");
    CHECK_FALSE(o.passed());
}

TEST_CASE("pentablock") {
    DomainPoint k0(TupleKind::penta, {1, 0, 1});
    CHECK(on_K0(k0));
    CheckReport r = membership(k0);
    CHECK(r.conclusion == "boundary");
    CHECK(r.passed());

    Certificate c0 = certificate_search(DomainPoint(TupleKind::penta, {0, 0, 0}));
    CHECK(c0.success);
    CHECK(c0.a.norm() < 1e-12);
    Certificate c1 = certificate_search(DomainPoint(TupleKind::penta, {0, 2, 1}));
    CHECK(c1.success);
    CHECK((c1.a - Mat::Identity(2, 2)).norm() < 1e-6);

    std::mt19937_64 rng(35);
    for (int t = 0; t < 40; ++t) {
        Mat a = random_contraction(rng, 2, 0.995);
        DomainPoint x(TupleKind::penta, penta_coords(a));
        CheckReport m = membership(x);
        CHECK(accepted(m));
        Certificate c = certificate_search(x);
        CHECK(c.success);
        CHECK(c.constraint_value <= op_norm(a) + 1e-6);
    }
    // distinguished boundary points are in the closed pentablock
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        double th = 2 * M_PI * u(rng), tt = 4 * u(rng) - 2, psi = 2 * M_PI * u(rng);
        DomainPoint x(TupleKind::penta, {std::polar(std::sqrt(1 - tt * tt / 4), psi), std::polar(tt, th / 2), std::polar(1.0, th)});
        CHECK(on_K0(x));
        CHECK(accepted(membership(x)));
    }
    CheckReport out = membership(DomainPoint(TupleKind::penta, {1.2, 0, 0}));
    CHECK(out.conclusion == "outside");
    // (s, p) = (1.5, 0.6) lies in the symmetrized bidisc; brute-force minima of ||A|| are 0.867 and 1.163
    CHECK(membership(DomainPoint(TupleKind::penta, {0.3, 1.5, 0.6})).conclusion == "inside");
    CheckReport out2 = membership(DomainPoint(TupleKind::penta, {0.7, 1.5, 0.6}));
    CHECK(out2.conclusion == "outside");
    Certificate c2 = certificate_search(DomainPoint(TupleKind::penta, {0.7, 1.5, 0.6}));
    CHECK(c2.residual < 1e-12);
    CHECK(c2.constraint_value == doctest::Approx(1.1626).epsilon(1e-3));
}

TEST_CASE("pentablock a21 bound") {
    std::mt19937_64 rng(40);
    // no contraction exceeds the bound, and some get close
    for (int t = 0; t < 200; ++t) {
        Mat a = random_contraction(rng, 2, 1.0);
        CHECK(std::abs(a(1, 0)) <= penta_a_bound(a.trace(), a.determinant()) + 1e-9);
    }
    // brute-force minimum of ||A|| over realizations on each side of the bound
    auto min_norm = [](cplx a21, cplx s, cplx p) {
        double best = 1e9;
        for (int i = 0; i < 241; ++i)
            for (int j = 0; j < 241; ++j) {
                cplx q(-2.0 + i / 60.0, -2.0 + j / 60.0);
                Mat m(2, 2);
                m << q, (q * (s - q) - p) / a21, a21, s - q;
                best = std::min(best, op_norm(m));
            }
        return best;
    };
    for (int t = 0; t < 6; ++t) {
        Mat a = random_contraction(rng, 2, 0.9);
        cplx s = a.trace(), p = a.determinant();
        double b = penta_a_bound(s, p);
        CHECK(min_norm(1.03 * b, s, p) > 1.0);
        CHECK(min_norm(0.97 * b, s, p) < 1.0);
        CHECK(membership(DomainPoint(TupleKind::penta, {0.97 * b, s, p})).conclusion == "inside");
        CHECK(membership(DomainPoint(TupleKind::penta, {1.03 * b, s, p})).conclusion == "outside");
    }
}

TEST_CASE("gamma7 and gamma5 pi family") {
    CheckReport r = membership(pi_point(0.5, 0.5));
    CHECK(r.conclusion == "inside");
    Certificate c = certificate_search(pi_eta_point(pi_point(0.5, 0.5), 1.0));
    CHECK(c.success);
    CHECK((c.a - diag3(0.5, 0.5, 0.25)).norm() < 1e-12);

    std::mt19937_64 rng(36);
    for (int t = 0; t < 100; ++t) {
        cplx a = random_disc(rng), b = random_disc(rng);
        DomainPoint x = pi_point(a, b);
        CHECK(accepted(membership(x)));
        for (int k = 0; k < 8; ++k) CHECK(accepted(membership(pi_eta_point(x, random_disc(rng)))));
    }
    std::uniform_real_distribution<double> u(1.2, 2.0);
    for (int t = 0; t < 50; ++t) {
        cplx a = random_disc(rng), b = std::polar(u(rng), 2 * M_PI * u(rng));
        if (t % 2) std::swap(a, b);
        CHECK(membership(pi_point(a, b)).conclusion == "outside");
        CHECK_FALSE(in_tetrablock(a, b, a * b));
    }
}

TEST_CASE("gamma7 generic points decided by orbit representatives") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 12; ++t) {
        Mat a = random_matrix(rng, 3, 3);
        double mu = mu_E(a, gamma7_structure(), 1e-8);
        for (double target : {0.9, 1.15}) {
            Mat s = a * (target / mu);
            DomainPoint x(TupleKind::gamma7, gamma7_coords(s));
            CheckReport r = membership(x);
            if (target < 1)
                CHECK(r.conclusion == "inside");
            else
                CHECK(r.conclusion == "outside");
        }
    }
}

TEST_CASE("gamma5 generic points decided by orbit representative") {
    std::mt19937_64 rng(38);
    for (int t = 0; t < 12; ++t) {
        Mat a = random_matrix(rng, 3, 3);
        double mu = mu_E(a, gamma5_structure(), 1e-8);
        for (double target : {0.9, 1.15}) {
            Mat s = a * (target / mu);
            DomainPoint x(TupleKind::gamma5, gamma5_coords(s));
            CheckReport r = membership(x);
            if (target < 1)
                CHECK(r.conclusion == "inside");
            else
                CHECK(r.conclusion == "outside");
        }
    }
}

TEST_CASE("axis points follow the tetrablock") {
    std::mt19937_64 rng(39);
    for (int t = 0; t < 30; ++t) {
        cplx x1 = random_disc(rng, 1.1), x6 = random_disc(rng, 1.1), x7 = random_disc(rng, 1.0);
        double gap = tetra_closed_form_gap(x1, x6, x7);
        if (std::abs(gap) < 1e-3) continue;
        CHECK(accepted(membership(DomainPoint(TupleKind::gamma7, {x1, 0, 0, 0, 0, x6, x7}))) == (gap < 0));
        CHECK(accepted(membership(DomainPoint(TupleKind::gamma5, {x1, 0, x7, 0, x6}))) == (gap < 0));
    }
}

TEST_CASE("distinguished boundary predicates") {
    cplx u = std::polar(1.0, 0.7);
    DomainPoint k = pi_point(u, std::polar(1.0, -0.3));
    CHECK(on_K(k));
    CHECK(membership(k).conclusion == "boundary");
    CHECK_FALSE(on_K(pi_point(0.5, 0.5)));
    DomainPoint k1 = pi_eta_point(k, 1.0);
    CHECK(on_K1(k1));
    CHECK(membership(k1).conclusion == "boundary");
}
