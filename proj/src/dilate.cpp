#include "opdil/dilate.hpp"

#include "opdil/opcore.hpp"
#include "opdil/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace opdil {

namespace {

using Row = std::vector<std::optional<Operator>>;

BlockGrid empty_grid(int blocks) {
    return BlockGrid(static_cast<size_t>(blocks), Row(static_cast<size_t>(blocks)));
}

Operator assemble(const BlockGrid& g, int n) {
    std::vector<int> dims(g.size(), n);
    return block_assemble(g, dims, dims);
}

void require_commuting(const std::vector<Operator>& ops, const ModelSpace& space, double tol, const char* what) {
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j) {
            double c = windowed_norm(space, commutator(ops[i], ops[j]));
            if (!(c <= tol)) {
                std::ostringstream os;
                os << what << ": inputs " << i + 1 << " and " << j + 1 << " do not commute (" << c << ")";
                throw std::invalid_argument(os.str());
            }
        }
}

DilationResult finish(TupleKind kind, const OperatorTuple& t, std::vector<Operator> ops, int depth) {
    DilationResult out;
    out.kind = kind;
    out.depth = depth;
    out.tuple = OperatorTuple(kind, std::move(ops), t.space.with_tail(depth));
    out.tuple.names = t.names;
    out.embed = tail_embedding(t.dim(), depth);
    out.report = coextension_report(t, out.tuple, out.embed);
    return out;
}

DilationResult unchanged(TupleKind kind, const OperatorTuple& t) {
    DilationResult out;
    out.kind = kind;
    out.depth = 0;
    out.tuple = t;
    out.embed = Operator::identity(t.dim());
    out.report = coextension_report(t, t, out.embed);
    out.report.add_note("defect space is trivial: the tuple is its own dilation");
    return out;
}

}  // namespace

Operator egervary(const Operator& t, int n) {
    if (!t.square()) throw std::invalid_argument("egervary: operator must be square");
    if (n < 1) throw std::invalid_argument("egervary: N must be positive");
    double nrm = op_norm(t);
    if (nrm > 1.0 + 1e-8) {
        std::ostringstream os;
        os << "egervary: operator is expansive (norm " << nrm << ")";
        throw std::domain_error(os.str());
    }
    const int d = t.rows();
    Operator id = Operator::identity(d);
    Operator dt = herm_sqrt(id - t.adjoint() * t, 3e-8);
    Operator dts = herm_sqrt(id - t * t.adjoint(), 3e-8);
    BlockGrid g = empty_grid(n + 1);
    g[0][0] = t;
    g[0][static_cast<size_t>(n)] = dts;
    g[1][0] = dt;
    g[1][static_cast<size_t>(n)] = -t.adjoint();
    for (int k = 2; k <= n; ++k) g[static_cast<size_t>(k)][static_cast<size_t>(k - 1)] = id;
    return assemble(g, d);
}

Operator with_copy_jump(const Operator& op, int u) {
    Band b = op.band();
    b.copy = Axis{u, 0, u, 0};
    return op.with_band(b);
}

Operator bidiagonal_lift(const Operator& top, const Operator& first, const Operator& diag, const Operator& sub,
                         int depth) {
    if (depth < 1) throw std::invalid_argument("lift depth must be positive");
    const int n = top.rows();
    BlockGrid g = empty_grid(depth + 1);
    g[0][0] = top;
    g[1][0] = first;
    for (int k = 1; k <= depth; ++k) {
        g[static_cast<size_t>(k)][static_cast<size_t>(k)] = diag;
        if (k < depth) g[static_cast<size_t>(k + 1)][static_cast<size_t>(k)] = sub;
    }
    return with_copy_jump(assemble(g, n), 1);
}

Operator isometric_lift(const Operator& t, const Operator& d, int depth) {
    if (depth < 1) throw std::invalid_argument("lift depth must be positive");
    const int n = t.rows();
    Operator id = Operator::identity(n);
    BlockGrid g = empty_grid(depth + 1);
    g[0][0] = t;
    g[1][0] = d;
    for (int k = 1; k < depth; ++k) g[static_cast<size_t>(k + 1)][static_cast<size_t>(k)] = id;
    return with_copy_jump(assemble(g, n), 1);
}

Operator tail_embedding(int host_dim, int depth) {
    Mat j = Mat::Zero(static_cast<Eigen::Index>(host_dim) * (depth + 1), host_dim);
    j.topRows(host_dim).setIdentity();
    return Operator(std::move(j));
}

CheckReport coextension_report(const OperatorTuple& original, const OperatorTuple& dilation, const Operator& embed) {
    if (original.size() != dilation.size()) throw std::invalid_argument("coextension: arity mismatch");
    CheckReport r;
    r.name = "coextension";
    const ModelSpace& sp = dilation.space;
    Operator jt = embed.adjoint();
    r.add_le("embed*embed = I", op_norm((jt * embed - Operator::identity(embed.cols())).mat()), 1e-12);
    for (int i = 0; i < original.size(); ++i) {
        Operator e = (dilation[i].adjoint() * embed - embed * original[i].adjoint()) * jt;
        Window w = safe_window(sp, e);
        r.window_margin = std::max(r.window_margin, w.margin);
        r.add_le(dilation.names.at(static_cast<size_t>(i)) + "* on H = " + original.names.at(static_cast<size_t>(i)) +
                     "*",
                 op_norm(e * w.projector), 1e-9);
    }
    r.finalize();
    return r;
}

DilationResult schaffer(TupleKind kind, const OperatorTuple& t, const FundamentalSet& f, int depth) {
    if (kind != TupleKind::gamma7 && kind != TupleKind::gamma5)
        throw std::invalid_argument("schaffer: kind must be gamma7 or gamma5");
    if (depth < 2) throw std::invalid_argument("schaffer: depth must be at least 2");
    if (t.size() != tuple_arity(kind) || f.kind != kind)
        throw std::invalid_argument("schaffer: tuple or fundamental set does not match kind " + to_string(kind));
    if (f.empty()) return unchanged(kind, t);

    const Operator& d = f.defect.d;
    auto lift = [&](const Operator& top, const Operator& diag, const Operator& sub) {
        return bidiagonal_lift(top, sub * d, diag, sub, depth);
    };
    std::vector<Operator> v;
    if (kind == TupleKind::gamma7) {
        for (int i = 1; i <= 6; ++i)
            v.push_back(lift(t.at1(i), f.ops[static_cast<size_t>(i - 1)], f.ops[static_cast<size_t>(6 - i)].adjoint()));
        v.push_back(isometric_lift(t.at1(7), d, depth));
    } else {
        const Operator &g1 = f.ops[0], &g2 = f.ops[1], &gt1 = f.ops[2], &gt2 = f.ops[3];
        v.push_back(lift(t[0], g1, gt2.adjoint()));
        v.push_back(lift(t[1], 2.0 * g2, 2.0 * gt1.adjoint()));
        v.push_back(isometric_lift(t[2], d, depth));
        v.push_back(lift(t[3], 2.0 * gt1, 2.0 * g2.adjoint()));
        v.push_back(lift(t[4], gt2, g1.adjoint()));
    }
    DilationResult out = finish(kind, t, std::move(v), depth);
    CheckReport prof = commutator_profile(f);
    if (!prof.passed()) out.report.add_note("fundamental operators fail the commutator hypotheses");
    out.report.sections.push_back(std::move(prof));
    return out;
}

DilationResult pentablock_dilation(const OperatorTuple& p, const Operator& x, int depth) {
    if (p.size() != 3) throw std::invalid_argument("pentablock_dilation: needs a triple");
    if (depth < 2) throw std::invalid_argument("pentablock_dilation: depth must be at least 2");
    const int n = p.dim();
    if (x.rows() != n || x.cols() != n) throw std::invalid_argument("pentablock_dilation: X has the wrong size");
    Operator id = Operator::identity(n);
    Operator q = x.adjoint() * x + x * x.adjoint();
    double qn = op_norm(q);
    if (qn > 4.0 + 1e-9) {
        std::ostringstream os;
        os << "pentablock_dilation: ||X*X + XX*|| = " << qn << " > 4";
        throw std::domain_error(os.str());
    }
    Operator l = herm_sqrt(id - 0.25 * q, 1e-9);
    DefectData dd = defect(p[2]);

    BlockGrid g = empty_grid(depth + 1);
    g[0][0] = p[0];
    for (int k = 1; k <= depth; ++k) g[static_cast<size_t>(k)][static_cast<size_t>(k)] = l;
    std::vector<int> dims(static_cast<size_t>(depth + 1), n);
    Operator r1 = block_assemble(g, dims, dims);
    Operator r2 = bidiagonal_lift(p[1], x.adjoint() * dd.d, x, x.adjoint(), depth);
    Operator r3 = isometric_lift(p[2], dd.d, depth);
    return finish(TupleKind::penta, p, {r1, r2, r3}, depth);
}

OperatorTuple pi(const Operator& t1, const Operator& t2, const ModelSpace& space, double tol) {
    require_commuting({t1, t2}, space, tol, "pi");
    Operator p = t1 * t2;
    return OperatorTuple(TupleKind::gamma7, {t1, t2, p, p, t1 * p, p * t2, t1 * p * t2}, space);
}

OperatorTuple pi_eta(const OperatorTuple& t, cplx eta) {
    if (t.size() != 7) throw std::invalid_argument("pi_eta: needs a 7-tuple");
    if (std::abs(eta) > 1.0 + 1e-12) throw std::invalid_argument("pi_eta: eta must lie in the closed disc");
    require_commuting(t.ops, t.space, 1e-9, "pi_eta");
    return OperatorTuple(TupleKind::gamma5,
                         {t[0], t[2] + eta * t[4], eta * t[6], t[1] + eta * t[3], eta * t[5]}, t.space);
}

OperatorTuple axis7(const Operator& t1, const Operator& t6, const Operator& t7, const ModelSpace& space, double tol) {
    require_commuting({t1, t6, t7}, space, tol, "axis7");
    Operator z = Operator::zero(t1.rows(), t1.cols());
    return OperatorTuple(TupleKind::gamma7, {t1, z, z, z, z, t6, t7}, space);
}

OperatorTuple gamma3(const Operator& t1, const Operator& t2, const Operator& v3, const ModelSpace& space, double tol) {
    require_commuting({t1, t2, v3}, space, tol, "gamma3");
    double iso = windowed_norm(space, v3.adjoint() * v3 - Operator::identity(v3.rows()));
    if (!(iso <= tol)) {
        std::ostringstream os;
        os << "gamma3: third input is not an isometry (" << iso << ")";
        throw std::invalid_argument(os.str());
    }
    const double third = 1.0 / 3.0;
    OperatorTuple out(TupleKind::plain,
                      {third * (t1 + t2 + v3), third * (t1 * t2 + t2 * v3 + v3 * t1), t1 * t2 * v3}, space);
    out.names = {"s1", "s2", "s3"};
    return out;
}

}  // namespace opdil
