#include "opdil/fundamentals.hpp"

#include "opdil/opcore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace opdil {

namespace {

const Operator& last_member(TupleKind kind, const OperatorTuple& t) {
    switch (kind) {
        case TupleKind::gamma7: return t[6];
        case TupleKind::gamma5: return t[2];
        case TupleKind::sym: return t[1];
        case TupleKind::penta: return t[2];
        default: break;
    }
    throw std::invalid_argument("no fundamental equations for kind " + to_string(kind));
}

void require_arity(TupleKind kind, const OperatorTuple& t) {
    int want = tuple_arity(kind);
    if (want <= 0) throw std::invalid_argument("no fundamental equations for kind " + to_string(kind));
    if (t.size() != want)
        throw std::invalid_argument(to_string(kind) + " needs a tuple of " + std::to_string(want) + " members, got " +
                                    std::to_string(t.size()));
}

double lambda_min(const Mat& h) {
    if (h.size() == 0) return 0.0;
    if (h.rows() == 1) return h(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Mat windowed(const ModelSpace& space, const Operator& x) { return compress(safe_window(space, x), x); }

std::string angle_text(cplx z) {
    std::ostringstream os;
    os.precision(4);
    os << "z = exp(" << std::arg(z) << "i)";
    return os.str();
}

FundamentalSet solve_impl(TupleKind kind, const OperatorTuple& t, double rank_tol) {
    auto eqs = fundamental_equations(kind, t);
    FundamentalSet f;
    f.kind = kind == TupleKind::penta ? TupleKind::sym : kind;
    f.space = t.space;
    f.defect = defect(last_member(kind, t), rank_tol);
    const Operator& d = f.defect.d;
    for (const auto& eq : eqs) {
        Operator y = f.defect.pinv * eq.rhs * f.defect.pinv;
        f.names.push_back(eq.name);
        f.residuals.push_back(windowed_norm(t.space, d * y * d - eq.rhs));
        f.ops.push_back(std::move(y));
    }
    return f;
}

}  // namespace

Operator DefectData::kernel_proj() const { return Operator::identity(range_proj.rows()) - range_proj; }

DefectData defect(const Operator& t, double rank_tol) {
    if (!t.square()) throw std::invalid_argument("defect: operator must be square");
    double nrm = op_norm(t);
    if (nrm > 1.0 + 1e-8) {
        std::ostringstream os;
        os << "defect: operator is expansive (norm " << nrm << ")";
        throw std::domain_error(os.str());
    }
    Operator h = Operator::identity(t.rows()) - t.adjoint() * t;
    DefectData out;
    // norms up to 1 + 1e-8 leave eigenvalues of I - T*T down to about -2e-8
    out.d = herm_sqrt(h, 3e-8);
    PsdPinv p = psd_pinv(out.d, rank_tol);
    out.pinv = p.pinv;
    out.range_proj = p.range_proj;
    out.rank = p.rank;
    out.sqrt_residual = op_norm((out.d * out.d - h).mat());
    out.is_projection = op_norm((out.d * out.d - out.d).mat()) <= 1e-9;
    return out;
}

Operator FundamentalSet::get(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return ops[i];
    if (kind == TupleKind::gamma5 && (name == "2G2" || name == "2Gt1")) return 2.0 * get(name.substr(1));
    throw std::invalid_argument("fundamental set has no operator named '" + name + "'");
}

std::vector<Operator> FundamentalSet::scaled() const {
    if (kind != TupleKind::gamma5) return ops;
    return {ops[0], 2.0 * ops[1], 2.0 * ops[2], ops[3]};
}

std::vector<std::string> FundamentalSet::scaled_names() const {
    if (kind != TupleKind::gamma5) return names;
    return {"G1", "2G2", "2Gt1", "Gt2"};
}

double FundamentalSet::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

std::vector<FundamentalEquation> fundamental_equations(TupleKind kind, const OperatorTuple& t) {
    require_arity(kind, t);
    std::vector<FundamentalEquation> eqs;
    switch (kind) {
        case TupleKind::gamma7:
            for (int i = 1; i <= 6; ++i)
                eqs.push_back({"F" + std::to_string(i), t.at1(i) - t.at1(7 - i).adjoint() * t.at1(7)});
            break;
        case TupleKind::gamma5: {
            const Operator &s1 = t[0], &s2 = t[1], &s3 = t[2], &st1 = t[3], &st2 = t[4];
            eqs.push_back({"G1", s1 - st2.adjoint() * s3});
            eqs.push_back({"G2", 0.5 * (s2 - st1.adjoint() * s3)});
            eqs.push_back({"Gt1", 0.5 * (st1 - s2.adjoint() * s3)});
            eqs.push_back({"Gt2", st2 - s1.adjoint() * s3});
            break;
        }
        case TupleKind::sym: eqs.push_back({"X", t[0] - t[0].adjoint() * t[1]}); break;
        case TupleKind::penta: eqs.push_back({"X", t[1] - t[1].adjoint() * t[2]}); break;
        default: throw std::invalid_argument("no fundamental equations for kind " + to_string(kind));
    }
    return eqs;
}

FundamentalSet solve_fundamentals_unchecked(TupleKind kind, const OperatorTuple& t, double rank_tol) {
    return solve_impl(kind, t, rank_tol);
}

FundamentalSet solve_fundamentals(TupleKind kind, const OperatorTuple& t, double tol, double rank_tol) {
    FundamentalSet f = solve_impl(kind, t, rank_tol);
    for (size_t i = 0; i < f.ops.size(); ++i)
        if (!(f.residuals[i] <= tol)) {
            std::ostringstream os;
            os << "fundamental equation for " << f.names[i] << " has no solution on the defect space (residual "
               << f.residuals[i] << " > " << tol << ")";
            throw std::domain_error(os.str());
        }
    return f;
}

RhoResult rho_sym(const Operator& s, const Operator& p) {
    if (!s.square() || s.rows() != p.rows() || !p.square()) throw std::invalid_argument("rho_sym: shape mismatch");
    Operator id = Operator::identity(s.rows());
    Operator x = 2.0 * (id - p.adjoint() * p) - (s - s.adjoint() * p) - (s.adjoint() - p.adjoint() * s);
    return {0.5 * (x + x.adjoint()), op_norm((x - x.adjoint()).mat())};
}

RhoResult rho_tetra(const Operator& t1, const Operator& t2, const Operator& t3) {
    if (!t1.square() || t1.rows() != t2.rows() || t1.rows() != t3.rows() || !t2.square() || !t3.square())
        throw std::invalid_argument("rho_tetra: shape mismatch");
    Operator id = Operator::identity(t1.rows());
    Operator c = t2 - t1.adjoint() * t3;
    Operator x = (id - t3.adjoint() * t3) + (t2.adjoint() * t2 - t1.adjoint() * t1) - c - c.adjoint();
    return {0.5 * (x + x.adjoint()), op_norm((x - x.adjoint()).mat())};
}

RhoResult rho(TupleKind kind, const std::vector<Operator>& args) {
    if (kind == TupleKind::sym) {
        if (args.size() != 2) throw std::invalid_argument("rho(sym) needs 2 operators");
        return rho_sym(args[0], args[1]);
    }
    if (kind == TupleKind::tetra) {
        if (args.size() != 3) throw std::invalid_argument("rho(tetra) needs 3 operators");
        return rho_tetra(args[0], args[1], args[2]);
    }
    throw std::invalid_argument("rho is defined for sym and tetra only");
}

CheckReport chain_report(TupleKind kind, const OperatorTuple& t, const ChainOptions& opt) {
    if (kind != TupleKind::gamma7 && kind != TupleKind::gamma5)
        throw std::invalid_argument("chain_report: kind must be gamma7 or gamma5");
    require_arity(kind, t);
    if (opt.z_samples < 1) throw std::invalid_argument("chain_report: z_samples must be positive");

    using Pair = std::pair<Operator, Operator>;
    std::vector<Pair> tetra_pairs, sums;
    std::vector<std::string> tetra_names, sum_names;
    const Operator& last = last_member(kind, t);
    if (kind == TupleKind::gamma7) {
        for (int i = 1; i <= 6; ++i) {
            std::string a = "T" + std::to_string(i), b = "T" + std::to_string(7 - i);
            tetra_pairs.emplace_back(t.at1(i), t.at1(7 - i));
            tetra_names.push_back("(" + a + ", z" + b + ", zT7)");
            sums.emplace_back(t.at1(i), t.at1(7 - i));
            sum_names.push_back(a + " + z" + b);
        }
    } else {
        Operator s1 = t[0], s2h = 0.5 * t[1], st1h = 0.5 * t[3], st2 = t[4];
        tetra_pairs = {{s1, st2}, {st2, s1}, {s2h, st1h}, {st1h, s2h}};
        tetra_names = {"(S1, zSt2, zS3)", "(St2, zS1, zS3)", "(S2/2, zSt1/2, zS3)", "(St1/2, zS2/2, zS3)"};
        sums = {{s1, st2}, {s2h, st1h}};
        sum_names = {"S1 + zSt2", "S2/2 + zSt1/2"};
    }

    const int nz = opt.z_samples;
    std::vector<cplx> zs;
    for (int k = 0; k < nz; ++k) zs.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / nz));

    CheckReport r;
    r.name = "chain(" + to_string(kind) + ")";
    auto worst = [&](const std::string& label, const std::vector<std::string>& names, int count, double tol,
                     auto&& f) {
        std::vector<double> v = evaluate_grid(
            count * nz, [&](int k) { return f(k / nz, zs[static_cast<size_t>(k % nz)]); }, opt.exec);
        size_t at = static_cast<size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        r.add_le(label, v[at], tol);
        r.add_note(label + ": worst at " + names[at / static_cast<size_t>(nz)] + ", " + angle_text(zs[at % nz]));
    };

    const ModelSpace& sp = t.space;
    worst("tetra rho >= 0", tetra_names, static_cast<int>(tetra_pairs.size()), opt.psd_tol, [&](int p, cplx z) {
        const auto& [a, b] = tetra_pairs[static_cast<size_t>(p)];
        return -lambda_min(windowed(sp, rho_tetra(a, z * b, z * last).value));
    });
    worst("sym rho >= 0", sum_names, static_cast<int>(sums.size()), opt.psd_tol, [&](int p, cplx z) {
        const auto& [a, b] = sums[static_cast<size_t>(p)];
        return -lambda_min(windowed(sp, rho_sym(a + z * b, z * last).value));
    });
    worst("spectral radius <= 2", sum_names, static_cast<int>(sums.size()), opt.radius_tol, [&](int p, cplx z) {
        const auto& [a, b] = sums[static_cast<size_t>(p)];
        return spectral_radius(windowed(sp, a + z * b)) - 2.0;
    });

    double lnorm = op_norm(last);
    if (lnorm > 1.0 + 1e-8) {
        r.add_le("last member contraction", lnorm - 1.0, 1e-8);
        for (const auto& eq : fundamental_equations(kind, t))
            r.add_le("fundamental equation " + eq.name + " solvable", std::numeric_limits<double>::infinity(),
                     opt.solve_tol);
        r.add_le("numerical radius <= 1", std::numeric_limits<double>::infinity(), opt.omega_tol);
        r.add_note("last member is expansive: the defect operator and fundamental operators are undefined");
    } else {
        FundamentalSet f = solve_impl(kind, t, 1e-8);
        for (size_t i = 0; i < f.ops.size(); ++i)
            r.add_le("fundamental equation " + f.names[i] + " solvable", f.residuals[i], opt.solve_tol);
        std::vector<Pair> om;
        std::vector<std::string> om_names;
        if (kind == TupleKind::gamma7) {
            // F_{7-i} + zF_i = z(F_i + conj(z)F_{7-i}) and the grid is closed under conjugation
            for (int i = 0; i < 3; ++i) {
                om.emplace_back(f.ops[static_cast<size_t>(i)], f.ops[static_cast<size_t>(5 - i)]);
                om_names.push_back(f.names[static_cast<size_t>(i)] + " + z" + f.names[static_cast<size_t>(5 - i)]);
            }
        } else {
            om = {{f.ops[0], f.ops[3]}, {f.ops[1], f.ops[2]}};
            om_names = {"G1 + zGt2", "G2 + zGt1"};
        }
        NumericalRadiusOptions nopt;
        nopt.coarse = 180;
        nopt.exec = Exec::serial;
        worst("numerical radius <= 1", om_names, static_cast<int>(om.size()), opt.omega_tol, [&](int p, cplx z) {
            const auto& [a, b] = om[static_cast<size_t>(p)];
            Mat c = windowed(sp, a + z * b);
            return c.size() ? numerical_radius(c, nopt) - 1.0 : -1.0;
        });
    }
    r.add_note("necessary conditions only: passing does not show the tuple is a contraction for the domain");
    r.finalize();
    return r;
}

}  // namespace opdil
