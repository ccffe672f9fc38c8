#include "opdil/gallery.hpp"
#include "opdil/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <limits>

using namespace opdil;
using namespace testsupport;

TEST_CASE("matrix json round trip is exact") {
    std::mt19937_64 rng(1);
    Mat m = random_matrix(rng, 3, 4);
    ojson j = matrix_to_json(m);
    CHECK(j["rows"] == 3);
    CHECK(j["cols"] == 4);
    CHECK(j["data"].size() == 12);
    CHECK(j["data"][1][0].get<double>() == m(0, 1).real());
    Mat back = matrix_from_json(ojson::parse(j.dump()));
    CHECK(back == m);
}

TEST_CASE("matrix json accepts rows of numbers or pairs") {
    Mat m = matrix_from_json(ojson::parse("[[1, [0, 2]], [3.5, -1]]"));
    CHECK(m(0, 1) == cplx(0, 2));
    CHECK(m(1, 0) == cplx(3.5, 0));
    CHECK_THROWS_AS(matrix_from_json(ojson::parse("[[1, 2], [3]]")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(ojson::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(ojson::parse(R"({"rows":1,"cols":1,"data":[[1,0,0]]})")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(ojson::parse(R"("x")")), std::invalid_argument);
}

TEST_CASE("tuple json round trip") {
    std::mt19937_64 rng(2);
    OperatorTuple t(TupleKind::penta,
                    {Operator(random_matrix(rng, 2, 2)), Operator(random_matrix(rng, 2, 2)), Operator(random_matrix(rng, 2, 2))});
    t.names = {"A", "S", "P"};
    OperatorTuple back = tuple_from_json(ojson::parse(tuple_to_json(t).dump()));
    CHECK(back.kind == TupleKind::penta);
    CHECK(back.names == t.names);
    for (int i = 0; i < 3; ++i) CHECK(back[i].mat() == t[i].mat());
    CHECK_THROWS_AS(tuple_from_json(ojson::parse(R"({"kind":"penta","ops":[[[1]]]})")), std::invalid_argument);
    CHECK_THROWS_AS(tuple_from_json(ojson::parse(R"({"kind":"plain","ops":[[[1]]],"names":["a","b"]})")),
                    std::invalid_argument);
}

TEST_CASE("points from json") {
    DomainPoint x = point_from_json(ojson::parse("[0.5, [0, 0.5], 0.1]"), TupleKind::tetra);
    CHECK(x.x(2) == cplx(0, 0.5));
    DomainPoint y = point_from_json(point_to_json(x), TupleKind::tetra);
    CHECK(y.coords == x.coords);
    CHECK_THROWS_AS(point_from_json(point_to_json(x), TupleKind::penta), std::invalid_argument);
}

TEST_CASE("fundamental set json round trip") {
    Exam1Data e = exam1_data(8);
    FundamentalSet f = solve_fundamentals(TupleKind::gamma7, e.tuple);
    ojson j = fundamentals_to_json(f);
    CHECK(j["names"][0] == "F1");
    FundamentalSet g = fundamentals_from_json(ojson::parse(j.dump()), e.tuple);
    REQUIRE(g.ops.size() == 6);
    for (size_t k = 0; k < 6; ++k) CHECK(g.ops[k].mat() == f.ops[k].mat());
    CHECK(g.max_residual() <= 1e-10);

    // operators that do not solve the equations show up in the residuals
    j["ops"][0] = matrix_to_json(Mat::Zero(e.tuple.dim(), e.tuple.dim()));
    CHECK(fundamentals_from_json(j, e.tuple).residuals[0] > 0.5);
    j["ops"].erase(0);
    CHECK_THROWS_AS(fundamentals_from_json(j, e.tuple), std::invalid_argument);
}

TEST_CASE("report json: empty report and byte-identical round trip") {
    CheckReport empty;
    empty.name = "x";
    empty.finalize();
    CHECK(emit_report(empty, ReportFormat::json) == R"({"name":"x","items":[],"verdict":"pass"})");

    CheckReport r = run_example(make_case("exam1"));
    std::string a = emit_report(r, ReportFormat::json);
    std::string b = emit_report(report_from_json(ojson::parse(a)), ReportFormat::json);
    CHECK(a == b);

    CheckReport inf;
    inf.name = "inf";
    inf.add_le("unbounded", std::numeric_limits<double>::infinity(), 1.0);
    inf.finalize();
    std::string s = emit_report(inf, ReportFormat::json);
    CHECK(s.find("\"inf\"") != std::string::npos);
    CheckReport back = report_from_json(ojson::parse(s));
    CHECK(std::isinf(back.items[0].residual));
    CHECK(back.verdict == Verdict::fail);
}

TEST_CASE("text report aligns columns") {
    CheckReport r;
    r.name = "t";
    r.add_le("short", 1e-12, 1e-9);
    r.add_le("a longer label", 2.0, 1.0);
    r.finalize();
    std::string s = emit_report(r, ReportFormat::text);
    auto l1 = s.find("short"), l2 = s.find("a longer label");
    REQUIRE(l1 != std::string::npos);
    REQUIRE(l2 != std::string::npos);
    auto col = [&](size_t from) {
        size_t line = s.rfind('\n', from) + 1;
        return s.find_first_of("0123456789-", from + 5) - line;
    };
    CHECK(col(l1) == col(l2));
    CHECK(s.find("FAIL") != std::string::npos);
}

TEST_CASE("load_json reads text or files") {
    CHECK(load_json("[1, 2]").size() == 2);
    std::string path = "io_test_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"a": 1})";
    }
    CHECK(load_json(path)["a"] == 1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_json("does_not_exist.json"), std::runtime_error);
}
