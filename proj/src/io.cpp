#include "opdil/io.hpp"

#include "opdil/opcore.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace opdil {

namespace {

cplx entry(const ojson& e) {
    if (e.is_number()) return e.get<double>();
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    throw std::invalid_argument("matrix entry must be a number or an [re, im] pair, got " + e.dump());
}

double number(const ojson& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::invalid_argument("expected a number, got " + j.dump());
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::hypothesis_violated})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

}  // namespace

ojson matrix_to_json(const Mat& m) {
    ojson j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ojson data = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back({m(i, k).real(), m(i, k).imag()});
    j["data"] = std::move(data);
    return j;
}

Mat matrix_from_json(const ojson& j) {
    if (j.is_object()) {
        if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
            throw std::invalid_argument("matrix object needs rows, cols and data");
        const auto r = j["rows"].get<Eigen::Index>(), c = j["cols"].get<Eigen::Index>();
        const ojson& d = j["data"];
        if (r < 1 || c < 1) throw std::invalid_argument("matrix dimensions must be positive");
        if (!d.is_array() || static_cast<Eigen::Index>(d.size()) != r * c)
            throw std::invalid_argument("matrix data has " + std::to_string(d.size()) + " entries, expected " +
                                        std::to_string(r * c));
        Mat m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index k = 0; k < c; ++k) m(i, k) = entry(d[static_cast<size_t>(i * c + k)]);
        return m;
    }
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        // list of rows
        const auto r = static_cast<Eigen::Index>(j.size()), c = static_cast<Eigen::Index>(j[0].size());
        Mat m(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            const ojson& row = j[static_cast<size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
                throw std::invalid_argument("matrix rows differ in length");
            for (Eigen::Index k = 0; k < c; ++k) m(i, k) = entry(row[static_cast<size_t>(k)]);
        }
        return m;
    }
    throw std::invalid_argument("not a matrix: " + j.dump().substr(0, 80));
}

ojson tuple_to_json(const OperatorTuple& t) {
    ojson j;
    j["kind"] = to_string(t.kind);
    j["names"] = t.names;
    ojson ops = ojson::array();
    for (const auto& op : t.ops) ops.push_back(matrix_to_json(op.mat()));
    j["ops"] = std::move(ops);
    return j;
}

OperatorTuple tuple_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("ops")) throw std::invalid_argument("tuple needs an ops array");
    TupleKind kind = j.contains("kind") ? tuple_kind_from_string(j["kind"].get<std::string>()) : TupleKind::plain;
    std::vector<Operator> ops;
    for (const auto& m : j["ops"]) ops.emplace_back(matrix_from_json(m));
    OperatorTuple t(kind, std::move(ops));
    if (j.contains("names")) {
        auto names = j["names"].get<std::vector<std::string>>();
        if (static_cast<int>(names.size()) != t.size()) throw std::invalid_argument("names and ops differ in length");
        t.names = std::move(names);
    }
    return t;
}

DomainPoint point_from_json(const ojson& j, TupleKind kind) {
    const ojson* coords = &j;
    if (j.is_object()) {
        if (j.contains("kind") && tuple_kind_from_string(j["kind"].get<std::string>()) != kind)
            throw std::invalid_argument("point kind does not match --kind");
        if (!j.contains("coords")) throw std::invalid_argument("point object needs coords");
        coords = &j["coords"];
    }
    if (!coords->is_array()) throw std::invalid_argument("point coordinates must be an array");
    std::vector<cplx> x;
    for (const auto& e : *coords) x.push_back(entry(e));
    return DomainPoint(kind, std::move(x));
}

ojson point_to_json(const DomainPoint& x) {
    ojson j;
    j["kind"] = to_string(x.kind);
    ojson c = ojson::array();
    for (cplx z : x.coords) c.push_back({z.real(), z.imag()});
    j["coords"] = std::move(c);
    return j;
}

ojson fundamentals_to_json(const FundamentalSet& f) {
    ojson j;
    j["kind"] = to_string(f.kind);
    j["names"] = f.names;
    ojson ops = ojson::array();
    for (const auto& op : f.ops) ops.push_back(matrix_to_json(op.mat()));
    j["ops"] = std::move(ops);
    j["residuals"] = f.residuals;
    j["defect_rank"] = f.defect.rank;
    j["defect_is_projection"] = f.defect.is_projection;
    return j;
}

FundamentalSet fundamentals_from_json(const ojson& j, const OperatorTuple& t) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("ops"))
        throw std::invalid_argument("fundamental set needs kind and ops");
    TupleKind kind = tuple_kind_from_string(j["kind"].get<std::string>());
    // solve once for the defect bookkeeping, then swap in the given operators.
    // a penta triple carries its sym equation on (P2, P3)
    TupleKind solve_kind = kind == TupleKind::sym && t.kind == TupleKind::penta ? TupleKind::penta : kind;
    FundamentalSet f = solve_fundamentals_unchecked(solve_kind, t);
    std::vector<Operator> ops;
    for (const auto& m : j["ops"]) ops.emplace_back(matrix_from_json(m));
    if (ops.size() != f.ops.size())
        throw std::invalid_argument("expected " + std::to_string(f.ops.size()) + " fundamental operators, got " +
                                    std::to_string(ops.size()));
    for (const auto& op : ops)
        if (op.rows() != t.dim() || op.cols() != t.dim())
            throw std::invalid_argument("fundamental operator has the wrong size");
    auto eqs = fundamental_equations(solve_kind, t);
    const Operator& d = f.defect.d;
    for (size_t k = 0; k < ops.size(); ++k) f.residuals[k] = windowed_norm(t.space, d * ops[k] * d - eqs[k].rhs);
    f.ops = std::move(ops);
    return f;
}

ojson dilation_to_json(const DilationResult& d, bool with_ops) {
    ojson j;
    j["kind"] = to_string(d.kind);
    j["depth"] = d.depth;
    j["host_dim"] = d.embed.cols();
    j["dim"] = d.tuple.dim();
    j["names"] = d.tuple.names;
    ojson norms = ojson::array();
    for (const auto& op : d.tuple.ops) norms.push_back(op_norm(op));
    j["norms"] = std::move(norms);
    if (with_ops) j["tuple"] = tuple_to_json(d.tuple);
    j["report"] = report_to_json(d.report);
    return j;
}

CheckReport report_from_json(const ojson& j) {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    for (const auto& it : j.at("items")) {
        CheckItem c;
        c.label = it.at("label").get<std::string>();
        c.residual = number(it.at("residual"));
        c.tol = number(it.at("tol"));
        c.relation = it.at("relation").get<std::string>();
        c.pass = it.at("pass").get<bool>();
        r.items.push_back(c);
    }
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("conclusion")) r.conclusion = j["conclusion"].get<std::string>();
    if (j.contains("window_margin")) r.window_margin = j["window_margin"].get<int>();
    if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
    if (j.contains("sections"))
        for (const auto& s : j["sections"]) r.sections.push_back(report_from_json(s));
    return r;
}

ojson load_json(const std::string& file_or_text) {
    auto first = file_or_text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (file_or_text[first] == '[' || file_or_text[first] == '{'))
        return ojson::parse(file_or_text);
    std::ifstream in(file_or_text);
    if (!in) throw std::runtime_error("cannot open '" + file_or_text + "'");
    try {
        return ojson::parse(in);
    } catch (const ojson::parse_error& e) {
        throw std::runtime_error("'" + file_or_text + "' is not valid JSON: " + e.what());
    }
}

}  // namespace opdil
