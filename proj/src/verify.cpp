#include "opdil/verify.hpp"

#include "opdil/opcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace opdil {

namespace {

struct Windowed {
    const ModelSpace& space;
    CheckReport& r;

    double norm(const Operator& e) {
        Window w = safe_window(space, e);
        r.window_margin = std::max(r.window_margin, w.margin);
        return op_norm(e * w.projector);
    }
    void le(const std::string& label, const Operator& e, double tol) { r.add_le(label, norm(e), tol); }
    // spectral radius of the windowed compression
    double radius(const Operator& a) {
        Window w = safe_window(space, a);
        Mat c = compress(w, a);
        return c.size() ? spectral_radius(c) : 0.0;
    }
};

std::string nm(const OperatorTuple& t, int i) { return t.names.at(static_cast<size_t>(i)); }

void commuting_items(const OperatorTuple& t, double tol, Windowed& w) {
    for (int i = 0; i < t.size(); ++i)
        for (int j = i + 1; j < t.size(); ++j)
            w.le("[" + nm(t, i) + "," + nm(t, j) + "]", commutator(t[i], t[j]), tol);
}

void require(const OperatorTuple& t, int arity, const std::string& what) {
    if (t.size() != arity)
        throw std::invalid_argument(what + " needs " + std::to_string(arity) + " members, got " +
                                    std::to_string(t.size()));
}

Operator star(const Operator& a) { return a.adjoint(); }

}  // namespace

std::string to_string(IsoKind k) {
    switch (k) {
        case IsoKind::isometry: return "isometry";
        case IsoKind::partial: return "partial";
        case IsoKind::gamma7: return "gamma7";
        case IsoKind::gamma5: return "gamma5";
        case IsoKind::penta: return "penta";
    }
    return "?";
}

IsoKind iso_kind_from_string(const std::string& s) {
    for (IsoKind k : {IsoKind::isometry, IsoKind::partial, IsoKind::gamma7, IsoKind::gamma5, IsoKind::penta})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown isometry kind '" + s + "'");
}

CheckReport is_commuting(const OperatorTuple& t, double tol) {
    CheckReport r;
    r.name = "commuting";
    Windowed w{t.space, r};
    commuting_items(t, tol, w);
    r.finalize();
    return r;
}

CheckReport isometry_check(IsoKind kind, const OperatorTuple& t, double tol) {
    CheckReport r;
    r.name = "isometry_check(" + to_string(kind) + ")";
    Windowed w{t.space, r};
    const int n = t.dim();
    Operator id = Operator::identity(n);
    auto iso = [&](int i) { w.le(nm(t, i) + "*" + nm(t, i) + " = I", star(t[i]) * t[i] - id, tol); };
    auto radius = [&](int i, double bound) {
        r.add_le("r(" + nm(t, i) + ") <= " + std::to_string(static_cast<int>(bound)), w.radius(t[i]) - bound, tol);
    };
    switch (kind) {
        case IsoKind::isometry:
            for (int i = 0; i < t.size(); ++i) iso(i);
            break;
        case IsoKind::partial:
            for (int i = 0; i < t.size(); ++i) {
                r.add_le("||" + nm(t, i) + "|| <= 1", op_norm(t[i]) - 1.0, tol);
                w.le(nm(t, i) + nm(t, i) + "*" + nm(t, i) + " = " + nm(t, i), t[i] * star(t[i]) * t[i] - t[i], tol);
            }
            break;
        case IsoKind::gamma7:
            require(t, 7, "gamma7 isometry check");
            commuting_items(t, tol, w);
            for (int i = 1; i <= 6; ++i)
                w.le(nm(t, i - 1) + " = " + nm(t, 6 - i) + "*" + nm(t, 6), t.at1(i) - star(t.at1(7 - i)) * t.at1(7),
                     tol);
            for (int i = 0; i < 7; ++i) radius(i, 1.0);
            iso(6);
            break;
        case IsoKind::gamma5: {
            require(t, 5, "gamma5 isometry check");
            commuting_items(t, tol, w);
            // members (W1, W2, W3, Wt1, Wt2)
            const Operator &w1 = t[0], &w2 = t[1], &w3 = t[2], &wt1 = t[3], &wt2 = t[4];
            w.le(nm(t, 0) + " = " + nm(t, 4) + "*" + nm(t, 2), w1 - star(wt2) * w3, tol);
            w.le(nm(t, 4) + " = " + nm(t, 0) + "*" + nm(t, 2), wt2 - star(w1) * w3, tol);
            w.le(nm(t, 1) + " = " + nm(t, 3) + "*" + nm(t, 2), w2 - star(wt1) * w3, tol);
            w.le(nm(t, 3) + " = " + nm(t, 1) + "*" + nm(t, 2), wt1 - star(w2) * w3, tol);
            const double bounds[] = {1.0, 2.0, 1.0, 2.0, 1.0};
            for (int i = 0; i < 5; ++i) radius(i, bounds[i]);
            iso(2);
            break;
        }
        case IsoKind::penta: {
            require(t, 3, "penta isometry check");
            commuting_items(t, tol, w);
            const Operator &r1 = t[0], &r2 = t[1], &r3 = t[2];
            iso(2);
            w.le(nm(t, 1) + " = " + nm(t, 1) + "*" + nm(t, 2), r2 - star(r2) * r3, tol);
            radius(1, 2.0);
            w.le(nm(t, 0) + "*" + nm(t, 0) + " = I - 1/4 " + nm(t, 1) + "*" + nm(t, 1),
                 star(r1) * r1 - (id - 0.25 * (star(r2) * r2)), tol);
            break;
        }
    }
    r.finalize();
    return r;
}

CheckReport necessary_conditions(TupleKind kind, const OperatorTuple& t, const FundamentalSet& f, double tol) {
    CheckReport r;
    r.name = "necessary_conditions(" + to_string(kind) + ")";
    Windowed w{t.space, r};
    const Operator& d = f.defect.d;
    Operator k = f.defect.kernel_proj();
    const std::string kk = "on ker D: ";
    auto on_kernel = [&](const std::string& label, const Operator& e) { w.le(label, e * k, tol); };

    switch (kind) {
        case TupleKind::gamma7: {
            require(t, 7, "gamma7 necessary conditions");
            if (f.kind != TupleKind::gamma7 || f.ops.size() != 6)
                throw std::invalid_argument("gamma7 necessary conditions need F1..F6");
            auto fs = [&](int i) { return star(f.ops[static_cast<size_t>(i - 1)]); };
            for (int i = 1; i <= 6; ++i)
                on_kernel(kk + "F" + std::to_string(i) + "* D T" + std::to_string(i) + " = F" + std::to_string(7 - i) + "* D T" +
                              std::to_string(7 - i),
                          fs(i) * d * t.at1(i) - fs(7 - i) * d * t.at1(7 - i));
            for (int i = 1; i <= 6; ++i)
                on_kernel(kk + "[F" + std::to_string(i) + "*,F" + std::to_string(7 - i) + "*] D T7 = 0",
                          (fs(i) * fs(7 - i) - fs(7 - i) * fs(i)) * d * t.at1(7));
            break;
        }
        case TupleKind::gamma5: {
            require(t, 5, "gamma5 necessary conditions");
            if (f.kind != TupleKind::gamma5 || f.ops.size() != 4)
                throw std::invalid_argument("gamma5 necessary conditions need G1, G2, Gt1, Gt2");
            const Operator &s1 = t[0], &s2 = t[1], &s3 = t[2], &st1 = t[3], &st2 = t[4];
            Operator g1 = star(f.ops[0]), g2 = star(f.ops[1]), gt1 = star(f.ops[2]), gt2 = star(f.ops[3]);
            Operator ds3 = d * s3;
            struct Pair {
                Operator plain, primed;
                double c;
                std::string plain_label, primed_label;
            };
            std::vector<Pair> pairs = {
                {gt2 * d * st2 - g1 * d * s1, (gt2 * g1 - g1 * gt2) * ds3, 1.0, "Gt2* D St2 = G1* D S1", "[Gt2*,G1*] D S3 = 0"},
                {g2 * d * s2 - gt1 * d * st1, (g2 * gt1 - gt1 * g2) * ds3, 2.0, "G2* D S2 = Gt1* D St1", "[G2*,Gt1*] D S3 = 0"},
                {gt2 * d * s2 - 2.0 * (gt1 * d * s1), (gt2 * gt1 - gt1 * gt2) * ds3, 2.0, "Gt2* D S2 = 2 Gt1* D S1",
                 "[Gt2*,Gt1*] D S3 = 0"},
                {2.0 * (g2 * d * st2) - g1 * d * st1, (g2 * g1 - g1 * g2) * ds3, 2.0, "2 G2* D St2 = G1* D St1",
                 "[G2*,G1*] D S3 = 0"},
                {gt2 * d * st1 - 2.0 * (g2 * d * s1), (gt2 * g2 - g2 * gt2) * ds3, 2.0, "Gt2* D St1 = 2 G2* D S1",
                 "[Gt2*,G2*] D S3 = 0"},
                {2.0 * (gt1 * d * st2) - g1 * d * s2, (gt1 * g1 - g1 * gt1) * ds3, 2.0, "2 Gt1* D St2 = G1* D S2",
                 "[Gt1*,G1*] D S3 = 0"},
            };
            for (const auto& p : pairs) {
                on_kernel(kk + p.plain_label, p.plain);
                on_kernel(kk + p.primed_label, p.primed);
            }
            // each pair is the same identity written two ways
            for (size_t p = 0; p < pairs.size(); ++p)
                on_kernel(kk + "agreement of pair " + std::to_string(p + 1), pairs[p].plain - pairs[p].c * pairs[p].primed);
            break;
        }
        case TupleKind::penta: {
            require(t, 3, "penta necessary conditions");
            if (f.ops.size() != 1) throw std::invalid_argument("penta necessary conditions need the single X");
            on_kernel(kk + "X D P3 = D P2", f.ops[0] * d * t[2] - d * t[1]);
            break;
        }
        default: throw std::invalid_argument("necessary conditions are defined for gamma7, gamma5 and penta");
    }
    r.conclusion = "not decided";
    r.add_note("a joint subnormal dilation of the fundamental operators has no finite test and is not decided");
    r.finalize();
    return r;
}

CheckReport commutator_profile(TupleKind kind, const std::vector<Operator>& ops, const ModelSpace& space, double tol) {
    CheckReport r;
    r.name = "commutator_profile(" + to_string(kind) + ")";
    Windowed w{space, r};
    if (kind == TupleKind::gamma7) {
        if (ops.size() != 6) throw std::invalid_argument("gamma7 profile needs F1..F6");
        auto f = [&](int i) -> const Operator& { return ops[static_cast<size_t>(i - 1)]; };
        auto s = [](int i) { return "F" + std::to_string(i); };
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j) w.le("commute: [" + s(i) + "," + s(j) + "]", commutator(f(i), f(j)), tol);
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j)
                w.le("mixed: [" + s(7 - i) + "*," + s(j) + "] - [" + s(7 - j) + "*," + s(i) + "]",
                     commutator(star(f(7 - i)), f(j)) - commutator(star(f(7 - j)), f(i)), tol);
        for (int i = 1; i <= 3; ++i)
            w.le("self: [" + s(i) + "*," + s(i) + "] - [" + s(7 - i) + "*," + s(7 - i) + "]",
                 commutator(star(f(i)), f(i)) - commutator(star(f(7 - i)), f(7 - i)), tol);
    } else if (kind == TupleKind::gamma5) {
        if (ops.size() != 4) throw std::invalid_argument("gamma5 profile needs G1, G2, Gt1, Gt2");
        std::vector<Operator> h = {ops[0], 2.0 * ops[1], 2.0 * ops[2], ops[3]};
        const std::vector<std::string> s = {"G1", "2G2", "2Gt1", "Gt2"};
        const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        for (auto [p, q] : pairs) w.le("commute: [" + s[p] + "," + s[q] + "]", commutator(h[p], h[q]), tol);
        for (auto [p, q] : pairs) {
            w.le("self: [" + s[p] + "*," + s[p] + "] - [" + s[q] + "*," + s[q] + "]",
                 commutator(star(h[p]), h[p]) - commutator(star(h[q]), h[q]), tol);
        }
        for (auto [p, q] : pairs) {
            Operator lhs = h[p] * star(h[q]) - star(h[q]) * h[p];
            Operator rhs = h[q] * star(h[p]) - star(h[p]) * h[q];
            w.le("mixed: " + s[p] + s[q] + "* - " + s[q] + "*" + s[p] + " = " + s[q] + s[p] +
                     "* - " + s[p] + "*" + s[q],
                 lhs - rhs, tol);
        }
    } else {
        throw std::invalid_argument("commutator profile is defined for gamma7 and gamma5 only");
    }
    r.finalize();
    return r;
}

CheckReport commutator_profile(const FundamentalSet& f, double tol) {
    return commutator_profile(f.kind, f.ops, f.space, tol);
}

std::vector<Operator> restrict_to_kernel(TupleKind kind, const OperatorTuple& t) {
    int last;
    switch (kind) {
        case TupleKind::gamma7: require(t, 7, "gamma7 restriction"); last = 6; break;
        case TupleKind::gamma5: require(t, 5, "gamma5 restriction"); last = 2; break;
        default: throw std::invalid_argument("restriction is defined for gamma7 and gamma5");
    }
    // for a partial isometry Ker T = Ran D_T
    DefectData d = defect(t[last]);
    if (!d.is_projection) throw std::domain_error("last member is not a partial isometry");
    const Operator& k = d.range_proj;
    std::vector<Operator> out;
    for (int i = 0; i < t.size(); ++i)
        if (i != last) out.push_back(k * t[i] * k);
    if (kind == TupleKind::gamma5) {
        // (S1, S2, St1, St2) -> (E1, E2, Et1, Et2) with the halves taken like G2, Gt1
        out[1] = 0.5 * out[1];
        out[2] = 0.5 * out[2];
    }
    return out;
}

}  // namespace opdil
