#include "opdil/opcore.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace opdil;
using namespace testsupport;

TEST_CASE("op_norm basics") {
    CHECK(op_norm(Operator::identity(3)) == doctest::Approx(1.0));
    Mat g = Mat::Zero(2, 2);
    g(0, 1) = 0.5;
    CHECK(op_norm(g) == doctest::Approx(0.5));
    CHECK(op_norm(Mat::Zero(3, 2)) == 0.0);
    CHECK_THROWS(op_norm(Mat(0, 3)));
}

TEST_CASE("op_norm matches power iteration") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Mat a = random_matrix(rng, 4, 3);
        CHECK(std::abs(op_norm(a) - power_norm(a)) < 1e-10);
    }
}

TEST_CASE("op_norm adjoint and submultiplicativity") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
        Mat a = random_matrix(rng, 5, 5), b = random_matrix(rng, 5, 5);
        CHECK(std::abs(op_norm(a) - op_norm(Mat(a.adjoint()))) < 1e-10);
        CHECK(op_norm(Mat(a * b)) <= op_norm(a) * op_norm(b) + 1e-9);
    }
}

TEST_CASE("herm_sqrt") {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    Operator s = herm_sqrt(Operator(d));
    CHECK(std::abs(s(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(s(1, 1) - 1.0) < 1e-12);

    std::mt19937_64 rng(3);
    Mat u = random_unitary(rng, 4);
    Mat q = u.leftCols(2) * u.leftCols(2).adjoint();
    CHECK((herm_sqrt(Operator(q)).mat() - q).norm() < 1e-10);

    for (int t = 0; t < 30; ++t) {
        Mat b = random_matrix(rng, 5, 5);
        Mat h = b.adjoint() * b;
        Operator r = herm_sqrt(Operator(h));
        CHECK((r.mat() * r.mat() - h).norm() < 1e-9 * std::max(1.0, h.norm()));
        CHECK(is_hermitian(r.mat()));
        Eigen::SelfAdjointEigenSolver<Mat> es(r.mat());
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }

    Mat neg = Mat::Identity(2, 2);
    neg(1, 1) = -0.5;
    CHECK_THROWS_WITH(herm_sqrt(Operator(neg)), doctest::Contains("negative eigenvalue"));
    Mat nh = Mat::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS(herm_sqrt(Operator(nh)));
    Mat tiny = Mat::Identity(2, 2);
    tiny(1, 1) = -1e-12;
    CHECK(herm_sqrt(Operator(tiny))(1, 1).real() == 0.0);
}

TEST_CASE("spectral and numerical radius") {
    Mat n = Mat::Zero(2, 2);
    n(0, 1) = 1.0;
    CHECK(spectral_radius(n) == doctest::Approx(0.0).epsilon(1e-12));
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.9;
    CHECK(spectral_radius(d) == doctest::Approx(0.9));
    CHECK(std::abs(numerical_radius(n) - 0.5) < 1e-8);
    CHECK(std::abs(numerical_radius(Mat(Mat::Identity(4, 4))) - 1.0) < 1e-8);
    CHECK_THROWS(numerical_radius(Mat::Zero(2, 3)));
    CHECK_THROWS(spectral_radius(Mat::Zero(2, 3)));
}

TEST_CASE("numerical radius against unit-vector sampling") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        Mat a = random_matrix(rng, 4, 4);
        double w = numerical_radius(a);
        double sampled = 0.0;
        for (int s = 0; s < 20000; ++s) {
            Eigen::VectorXcd x = random_matrix(rng, 4, 1).col(0).normalized();
            sampled = std::max(sampled, std::abs(x.dot(a * x)));
        }
        CHECK(w >= sampled - 1e-9);
        CHECK(w <= sampled * 1.05);
        for (int i = 0; i < 4; ++i) CHECK(w >= std::abs(a(i, i)) - 1e-8);
    }
}

TEST_CASE("numerical radius serial and parallel agree") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 5; ++t) {
        Mat a = random_matrix(rng, 7, 7);
        NumericalRadiusOptions s, p;
        s.exec = Exec::serial;
        p.exec = Exec::parallel;
        CHECK(numerical_radius(a, s) == numerical_radius(a, p));
    }
}

TEST_CASE("kernel_basis") {
    Subspace z = kernel_basis(Mat(Mat::Zero(3, 3)));
    CHECK(z.dim() == 3);
    std::mt19937_64 rng(8);
    Mat a = random_matrix(rng, 5, 5);
    CHECK(kernel_basis(a).dim() == 0);
    Mat b = random_matrix(rng, 5, 2) * random_matrix(rng, 2, 5);
    Subspace k = kernel_basis(b);
    CHECK(k.dim() == 3);
    for (int c = 0; c < k.dim(); ++c) CHECK((b * k.basis.col(c)).norm() <= k.tol + 1e-12);
    CHECK((k.basis.adjoint() * k.basis - Mat::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("joint_eigs") {
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = 2;
    b(0, 0) = 3;
    b(1, 1) = 4;
    auto je = joint_eigs({Operator(a), Operator(b)});
    REQUIRE(je.size() == 2);
    CHECK(std::abs(je[0][0] - cplx(1)) < 1e-12);
    CHECK(std::abs(je[0][1] - cplx(3)) < 1e-12);
    CHECK(std::abs(je[1][0] - cplx(2)) < 1e-12);
    CHECK(std::abs(je[1][1] - cplx(4)) < 1e-12);

    Mat x(1, 1);
    x(0, 0) = cplx(0.5, 0.5);
    auto one = joint_eigs({Operator(x), Operator(x)});
    CHECK(one.size() == 1);

    Mat n1 = Mat::Zero(3, 3), n2 = Mat::Zero(3, 3);
    n1(0, 1) = 1.0;
    n2(0, 2) = 1.0;
    auto nil = joint_eigs({Operator(n1), Operator(n2)});
    CHECK(nil.size() == 3);
    for (auto& p : nil)
        for (auto v : p) CHECK(std::abs(v) < 1e-8);

    Mat nc = Mat::Zero(2, 2);
    nc(0, 1) = 1.0;
    CHECK_THROWS_WITH(joint_eigs({Operator(nc), Operator(Mat(nc.adjoint()))}), doctest::Contains("commutator"));
}

TEST_CASE("joint_eigs of commuting upper-triangular pair") {
    Mat a(3, 3);
    a << 1.0, 2.0, 0.5, 0.0, 3.0, 1.0, 0.0, 0.0, 5.0;
    Mat b = a * a - 2.0 * a + Mat::Identity(3, 3);
    auto je = joint_eigs({Operator(a), Operator(b)});
    Eigen::ComplexEigenSolver<Mat> es(a);
    REQUIRE(je.size() == 3);
    for (auto& p : je) {
        bool found = false;
        for (int i = 0; i < 3; ++i)
            if (std::abs(es.eigenvalues()(i) - p[0]) < 1e-9) found = true;
        CHECK(found);
        CHECK(std::abs(p[1] - (p[0] * p[0] - 2.0 * p[0] + 1.0)) < 1e-9);
    }
}

TEST_CASE("joint_eigs of normal tuples from a shared unitary") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        Mat u = random_unitary(rng, 4);
        Mat d1 = Mat::Zero(4, 4), d2 = Mat::Zero(4, 4);
        std::vector<std::vector<cplx>> expect;
        for (int i = 0; i < 4; ++i) {
            d1(i, i) = random_disc(rng);
            d2(i, i) = random_disc(rng);
            expect.push_back({d1(i, i), d2(i, i)});
        }
        auto je = joint_eigs({Operator(Mat(u * d1 * u.adjoint())), Operator(Mat(u * d2 * u.adjoint()))});
        REQUIRE(je.size() == 4);
        for (auto& e : expect) {
            bool found = false;
            for (auto& p : je)
                if (std::abs(p[0] - e[0]) < 1e-8 && std::abs(p[1] - e[1]) < 1e-8) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("sparse product path agrees with the dense product") {
    std::mt19937_64 rng(41);
    Mat a = Mat::Zero(80, 80), b = Mat::Zero(80, 80);
    std::uniform_int_distribution<int> idx(0, 79);
    for (int k = 0; k < 150; ++k) {
        a(idx(rng), idx(rng)) = random_disc(rng);
        b(idx(rng), idx(rng)) = random_disc(rng);
    }
    CHECK((mat_product(a, b) - a * b).cwiseAbs().maxCoeff() < 1e-15);
    Mat d = random_matrix(rng, 80, 80);
    CHECK((mat_product(a, d) - a * d).cwiseAbs().maxCoeff() < 1e-12);
    // zero rows and columns are dropped before the norm
    Mat z = Mat::Zero(6, 5);
    z.block(1, 2, 2, 2) = random_matrix(rng, 2, 2);
    CHECK(op_norm(z) == doctest::Approx(Eigen::JacobiSVD<Mat>(z).singularValues()(0)).epsilon(1e-12));
}
