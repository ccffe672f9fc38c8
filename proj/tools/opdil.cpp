// opdil command line: membership, mu, fundamental, dilate, verify, gallery.
// Exit 0 when every verdict passes, 2 when a hypothesis is violated, 1 on
// failures and errors.
#include "opdil/dilate.hpp"
#include "opdil/domains.hpp"
#include "opdil/fundamentals.hpp"
#include "opdil/gallery.hpp"
#include "opdil/io.hpp"
#include "opdil/opcore.hpp"
#include "opdil/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

using namespace opdil;

namespace {

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return 0;
        case Verdict::hypothesis_violated: return 2;
        case Verdict::fail: return 1;
    }
    return 1;
}

void print(const ojson& j) { std::cout << j.dump() << "\n"; }

int print_report(const CheckReport& r, bool text) {
    emit_report(r, text ? ReportFormat::text : ReportFormat::json, std::cout);
    if (!text) std::cout << "\n";
    return exit_code(r.verdict);
}

struct Common {
    bool text = false;
};

void add_format(CLI::App* sub, Common& c) {
    sub->add_flag("--text", c.text, "plain text report instead of JSON");
    sub->add_flag("--json", [&c](std::int64_t) { c.text = false; }, "JSON report (default)");
}

// ------------------------------------------------------------------ membership

struct MembershipArgs {
    std::string kind, point;
    double tol = 1e-6;
};

int run_membership(const MembershipArgs& a, const Common& c) {
    TupleKind k = tuple_kind_from_string(a.kind);
    CheckReport r = membership(point_from_json(load_json(a.point), k), a.tol);
    return print_report(r, c.text);
}

// ------------------------------------------------------------------ mu

struct MuArgs {
    std::string structure, matrix;
    double tol = 1e-4;
    bool serial = false;
};

int run_mu(const MuArgs& a) {
    BlockStructure e = BlockStructure::parse(a.structure);
    Mat m = matrix_from_json(load_json(a.matrix));
    MuOptions opt;
    opt.tol = a.tol;
    opt.exec = a.serial ? Exec::serial : Exec::parallel;
    MuResult res = mu_E_detail(m, e, opt);
    ojson j;
    j["structure"] = e.str();
    j["mu"] = res.value;
    j["tol"] = a.tol;
    j["grid"] = res.grid;
    j["angles"] = res.angles;
    print(j);
    return 0;
}

// ------------------------------------------------------------------ fundamental

struct FundamentalArgs {
    std::string kind, tuple;
    double tol = 1e-9;
};

int run_fundamental(const FundamentalArgs& a) {
    TupleKind k = tuple_kind_from_string(a.kind);
    if (k != TupleKind::gamma7 && k != TupleKind::gamma5 && k != TupleKind::sym)
        throw std::invalid_argument("--kind must be gamma7, gamma5 or sym");
    OperatorTuple t = tuple_from_json(load_json(a.tuple));
    // a penta triple is accepted for sym: the equation is solved on (P2, P3)
    TupleKind solve = k == TupleKind::sym && t.kind == TupleKind::penta ? TupleKind::penta : k;
    print(fundamentals_to_json(solve_fundamentals(solve, t, a.tol)));
    return 0;
}

// ------------------------------------------------------------------ dilate

struct DilateArgs {
    std::string kind, tuple;
    int depth = 4;
    int n = 3;
    bool ops = false;
};

int run_dilate(const DilateArgs& a) {
    OperatorTuple t = tuple_from_json(load_json(a.tuple));
    if (a.kind == "egervary") {
        if (t.size() != 1) throw std::invalid_argument("egervary takes a tuple with one operator");
        Operator u = egervary(t[0], a.n);
        Mat id = Mat::Identity(u.rows(), u.rows());
        CheckReport r;
        r.name = "egervary";
        r.add_le("U*U = I", op_norm(Mat(u.mat().adjoint() * u.mat() - id)), 1e-9);
        r.add_le("UU* = I", op_norm(Mat(u.mat() * u.mat().adjoint() - id)), 1e-9);
        Mat uk = id, tk = Mat::Identity(t.dim(), t.dim());
        for (int k = 1; k <= a.n; ++k) {
            uk = uk * u.mat();
            tk = tk * t[0].mat();
            r.add_le("P U^" + std::to_string(k) + " P = T^" + std::to_string(k),
                     op_norm(Mat(uk.topLeftCorner(t.dim(), t.dim()) - tk)), 1e-9);
        }
        r.finalize();
        ojson j;
        j["kind"] = "egervary";
        j["N"] = a.n;
        j["host_dim"] = t.dim();
        j["dim"] = u.rows();
        if (a.ops) j["unitary"] = matrix_to_json(u.mat());
        j["report"] = report_to_json(r);
        print(j);
        return exit_code(r.verdict);
    }
    TupleKind k = tuple_kind_from_string(a.kind);
    DilationResult d;
    IsoKind iso;
    if (k == TupleKind::gamma7 || k == TupleKind::gamma5) {
        d = schaffer(k, t, solve_fundamentals(k, t), a.depth);
        iso = k == TupleKind::gamma7 ? IsoKind::gamma7 : IsoKind::gamma5;
    } else if (k == TupleKind::penta) {
        FundamentalSet f = solve_fundamentals(TupleKind::penta, t);
        d = pentablock_dilation(t, f.ops[0], a.depth);
        iso = IsoKind::penta;
    } else {
        throw std::invalid_argument("--kind must be gamma7, gamma5, penta or egervary");
    }
    CheckReport isor = isometry_check(iso, d.tuple);
    bool iso_ok = isor.passed();
    d.report.sections.push_back(std::move(isor));
    d.report.add_le("dilation is a " + to_string(iso) + " isometry", iso_ok ? 0.0 : 1.0, 0.0);
    d.report.finalize();
    print(dilation_to_json(d, a.ops));
    return exit_code(d.report.verdict);
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string kind, tuple, fundamentals, check = "auto";
    double tol = 1e-9;
};

TupleKind tuple_kind_of(IsoKind k) {
    switch (k) {
        case IsoKind::gamma7: return TupleKind::gamma7;
        case IsoKind::gamma5: return TupleKind::gamma5;
        case IsoKind::penta: return TupleKind::penta;
        default: return TupleKind::plain;
    }
}

int run_verify(const VerifyArgs& a, const Common& c) {
    OperatorTuple t = tuple_from_json(load_json(a.tuple));
    std::vector<std::string> checks;
    if (a.check == "all" || a.check == "auto") {
        checks = {"isometry"};
        if (a.check == "all" || !a.fundamentals.empty()) checks = {"isometry", "necessary", "profile"};
    } else {
        checks = {a.check};
    }
    if (a.kind == "commuting") checks = {"commuting"};
    std::optional<IsoKind> iso;
    if (a.kind != "commuting") iso = iso_kind_from_string(a.kind);
    TupleKind tk = iso ? tuple_kind_of(*iso) : TupleKind::plain;

    std::optional<FundamentalSet> f;
    auto fundamentals = [&]() -> const FundamentalSet& {
        if (tk == TupleKind::plain) throw std::invalid_argument("kind " + a.kind + " has no fundamental operators");
        if (!f) f = a.fundamentals.empty() ? solve_fundamentals(tk, t, a.tol)
                                           : fundamentals_from_json(load_json(a.fundamentals), t);
        return *f;
    };

    std::vector<CheckReport> out;
    for (const auto& ch : checks) {
        if (ch == "commuting")
            out.push_back(is_commuting(t, a.tol));
        else if (ch == "isometry")
            out.push_back(isometry_check(*iso, t, a.tol));
        else if (ch == "necessary")
            out.push_back(necessary_conditions(tk, t, fundamentals(), a.tol));
        else if (ch == "profile") {
            if (tk == TupleKind::penta) continue;  // no commutator table for penta
            out.push_back(commutator_profile(fundamentals(), a.tol));
        } else
            throw std::invalid_argument("--check must be auto, all, commuting, isometry, necessary or profile");
    }
    if (out.size() == 1) return print_report(out.front(), c.text);
    CheckReport r;
    r.name = "verify(" + a.kind + ")";
    for (auto& s : out) {
        r.add_le(s.name + " passes", s.passed() ? 0.0 : 1.0, 0.0);
        r.sections.push_back(std::move(s));
    }
    r.finalize();
    return print_report(r, c.text);
}

// ------------------------------------------------------------------ gallery

struct GalleryArgs {
    std::string which = "all";
    std::map<std::string, double> overrides;
};

int run_gallery(const GalleryArgs& a, const Common& c) {
    CheckReport r = a.which == "all" ? run_all(a.overrides) : run_example(make_case(a.which, a.overrides));
    return print_report(r, c.text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator dilation and domain membership toolkit"};
    app.require_subcommand(1);
    Common common;

    MembershipArgs mem;
    auto* s_mem = app.add_subcommand("membership", "decide membership of a point");
    s_mem->add_option("--kind", mem.kind, "gamma7 | gamma5 | tetra | penta")
        ->required()
        ->check(CLI::IsMember({"gamma7", "gamma5", "tetra", "penta"}));
    s_mem->add_option("--point", mem.point, "coordinates as JSON text or a JSON file")->required();
    s_mem->add_option("--tol", mem.tol, "boundary tolerance")->capture_default_str();
    add_format(s_mem, common);

    MuArgs mu;
    auto* s_mu = app.add_subcommand("mu", "structured singular value of a matrix");
    s_mu->add_option("--structure", mu.structure, "n,s,r1,...,rs")->required();
    s_mu->add_option("--matrix", mu.matrix, "matrix JSON file or text")->required();
    s_mu->add_option("--tol", mu.tol, "target accuracy")->capture_default_str();
    s_mu->add_flag("--serial", mu.serial, "use the serial reference kernel");

    FundamentalArgs fa;
    auto* s_f = app.add_subcommand("fundamental", "solve the fundamental equations of a tuple");
    s_f->add_option("--kind", fa.kind, "gamma7 | gamma5 | sym")
        ->required()
        ->check(CLI::IsMember({"gamma7", "gamma5", "sym"}));
    s_f->add_option("--tuple", fa.tuple, "tuple JSON file or text")->required();
    s_f->add_option("--tol", fa.tol, "residual tolerance")->capture_default_str();

    DilateArgs da;
    auto* s_d = app.add_subcommand("dilate", "construct an isometric dilation");
    s_d->add_option("--kind", da.kind, "gamma7 | gamma5 | penta | egervary")
        ->required()
        ->check(CLI::IsMember({"gamma7", "gamma5", "penta", "egervary"}));
    s_d->add_option("--tuple", da.tuple, "tuple JSON file or text")->required();
    s_d->add_option("--depth", da.depth, "tail copies")->capture_default_str()->check(CLI::Range(2, 64));
    s_d->add_option("--N", da.n, "power bound for egervary")->capture_default_str()->check(CLI::Range(1, 64));
    s_d->add_flag("--ops", da.ops, "include the dilation matrices");

    VerifyArgs va;
    auto* s_v = app.add_subcommand("verify", "check class relations of a tuple");
    s_v->add_option("--kind", va.kind, "isometry | partial | gamma7 | gamma5 | penta | commuting")
        ->required()
        ->check(CLI::IsMember({"isometry", "partial", "gamma7", "gamma5", "penta", "commuting"}));
    s_v->add_option("--tuple", va.tuple, "tuple JSON file or text")->required();
    s_v->add_option("--fundamentals", va.fundamentals, "fundamental set JSON (solved when absent)");
    s_v->add_option("--check", va.check, "auto | all | commuting | isometry | necessary | profile")
        ->capture_default_str();
    s_v->add_option("--tol", va.tol, "residual tolerance")->capture_default_str();
    add_format(s_v, common);

    GalleryArgs ga;
    std::optional<double> alpha, trunc, depth, z_samples, samples, seed;
    auto* s_g = app.add_subcommand("gallery", "run the worked examples");
    std::vector<std::string> cases = gallery_ids();
    cases.push_back("all");
    s_g->add_option("--case", ga.which, "case id or all")->capture_default_str()->check(CLI::IsMember(cases));
    s_g->add_option("--alpha", alpha, "alpha for exam3 and exam5 (default 0.5)");
    s_g->add_option("--trunc", trunc, "Hardy truncation level (default 8)");
    s_g->add_option("--depth", depth, "dilation tail copies (default 4)");
    s_g->add_option("--z-samples", z_samples, "torus samples per angle for the chain checks (default 16)");
    s_g->add_option("--samples", samples, "random points for the families (default 100)");
    s_g->add_option("--seed", seed, "seed for the families (default 7)");
    add_format(s_g, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors are errors: exit 1, help stays 0
        return app.exit(e) == 0 ? 0 : 1;
    }

    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) ga.overrides[key] = *v;
    };
    put("alpha", alpha);
    put("trunc", trunc);
    put("depth", depth);
    put("z_samples", z_samples);
    put("samples", samples);
    put("seed", seed);

    try {
        if (s_mem->parsed()) return run_membership(mem, common);
        if (s_mu->parsed()) return run_mu(mu);
        if (s_f->parsed()) return run_fundamental(fa);
        if (s_d->parsed()) return run_dilate(da);
        if (s_v->parsed()) return run_verify(va, common);
        if (s_g->parsed()) return run_gallery(ga, common);
    } catch (const std::domain_error& e) {
        // the input is outside the class the operation assumes
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
