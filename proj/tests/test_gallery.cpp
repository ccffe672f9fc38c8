#include "opdil/gallery.hpp"
#include "opdil/opcore.hpp"
#include "opdil/verify.hpp"

#include <doctest.h>

using namespace opdil;

TEST_CASE("gallery case parameters") {
    GalleryCase c = make_case("exam3");
    CHECK(c.params.at("alpha") == 0.5);
    CHECK(c.params.at("trunc") == 8);
    CHECK_FALSE(c.expected.empty());
    CHECK(make_case("exam3", {{"alpha", 0.25}}).params.at("alpha") == 0.25);
    CHECK_THROWS_AS(make_case("exam4"), std::invalid_argument);
    CHECK_THROWS_AS(make_case("exam3", {{"beta", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_case("exam3", {{"alpha", 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_case("exam3", {{"trunc", 8.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_case("exam1", {{"trunc", 6}}), std::invalid_argument);
    CHECK_THROWS_AS(make_case("exam3", {{"depth", 1}}), std::invalid_argument);
}

TEST_CASE("every expectation is evaluated") {
    for (const auto& id : gallery_ids()) {
        GalleryCase c = make_case(id, {{"samples", 20}, {"z_samples", 6}, {"trunc", 8}, {"depth", 4}});
        CheckReport r = run_example(c);
        INFO(id);
        for (const auto& e : c.expected) CHECK(r.find(e.condition) != nullptr);
        for (const auto& it : r.items) CHECK(it.label.rfind("not evaluated", 0) != 0);
        CHECK(r.passed());
    }
}

TEST_CASE("first example: closed forms, dilation, failing commutator identities") {
    Exam1Data e = exam1_data(8);
    FundamentalSet f = solve_fundamentals(TupleKind::gamma7, e.tuple);
    for (int k = 0; k < 6; ++k) CHECK(windowed_norm(e.space, f.ops[k] - e.f_closed[k]) < 1e-10);
    DilationResult d = exam1_tensor_dilation(e, 4);
    CHECK(d.report.passed());
    CHECK(isometry_check(IsoKind::gamma7, d.tuple).passed());
    CheckReport prof = commutator_profile(f);
    CHECK(prof.find("self: [F1*,F1] - [F6*,F6]")->residual == doctest::Approx(1.0));
    CHECK_FALSE(prof.passed());
}

TEST_CASE("second example: the g12 left side") {
    Exam2Data x = exam2_data(8);
    Exam1Data e = exam1_data(8);
    FundamentalSet f = solve_fundamentals(TupleKind::gamma5, pi_eta(e.tuple, 1.0));
    Operator g2 = f.scaled()[1];
    Operator lhs = commutator(g2.adjoint(), g2);
    CHECK(windowed_norm(e.space, lhs - x.g12_lhs) < 1e-10);
    CHECK(windowed_norm(e.space, lhs - x.g12_lhs_alt) > 1.0);
    // the gap is attained on the first summand's defect of M
    CHECK(windowed_norm(e.space, x.g12_lhs - x.g12_rhs) == doctest::Approx(2.0));
}

TEST_CASE("third example scales with alpha") {
    for (double alpha : {0.0, 0.3, 1.0}) {
        Exam3Data e = exam3_data(alpha, 6, 4);
        CHECK(op_norm(e.dilation.tuple[0]) == doctest::Approx(alpha).epsilon(1e-9));
        CHECK(isometry_check(IsoKind::gamma7, e.dilation.tuple).passed());
        CHECK(e.dilation.report.passed());
    }
    CHECK_THROWS_AS(exam3_data(0.5, 6, 3), std::invalid_argument);
}

TEST_CASE("fifth example: R2 norm and penta isometry") {
    for (double alpha : {0.2, 0.9}) {
        Exam5Data e = exam5_data(alpha, 6, 3);
        CHECK(op_norm(e.dilation.tuple[1]) == doctest::Approx(alpha).epsilon(1e-8));
        CHECK(isometry_check(IsoKind::penta, e.dilation.tuple).passed());
    }
}

TEST_CASE("run_all collects every case") {
    CheckReport r = run_all({{"samples", 10}, {"z_samples", 4}, {"trunc", 8}, {"depth", 4}});
    CHECK(r.sections.size() == gallery_ids().size());
    CHECK(r.passed());
}

TEST_CASE("gallery report text is deterministic") {
    std::map<std::string, double> o{{"samples", 10}, {"z_samples", 4}, {"trunc", 8}, {"depth", 4}};
    std::string a = emit_report(run_example(make_case("pi_family", o)), ReportFormat::json);
    std::string b = emit_report(run_example(make_case("pi_family", o)), ReportFormat::json);
    CHECK(a == b);
}
