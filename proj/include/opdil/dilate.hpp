#pragma once

#include "opdil/fundamentals.hpp"
#include "opdil/report.hpp"
#include "opdil/spaces.hpp"

#include <string>
#include <vector>

namespace opdil {

struct DilationResult {
    OperatorTuple tuple;  // on the enlarged space
    Operator embed;       // isometric inclusion of the original space
    int depth = 0;        // tail copies
    TupleKind kind = TupleKind::plain;
    CheckReport report;   // co-extension residuals
};

// (N+1) x (N+1) block unitary whose compressed powers reproduce T^k, k <= N.
Operator egervary(const Operator& t, int n);

// Tail copies are full copies of the host space. On the part of each copy
// outside the defect range the tuple acts as (0, ..., 0, shift), which is a
// reducing summand of the same class, so no support projector is needed.
DilationResult schaffer(TupleKind kind, const OperatorTuple& t, const FundamentalSet& f, int depth);

// (R1, R2, R3) with R1 = diag(P1, L, L, ...), R2 bidiagonal in X, R3 the
// isometric lift of P3, L = (I - (X*X + XX*)/4)^{1/2}.
DilationResult pentablock_dilation(const OperatorTuple& p, const Operator& x, int depth);

// Block lower bidiagonal operator on host (+) depth copies:
// column 0 is [top; first; 0; ...], copy k maps to copy k via diag and to
// copy k+1 via sub.
Operator bidiagonal_lift(const Operator& top, const Operator& first, const Operator& diag, const Operator& sub,
                         int depth);
// [T; D; 0, I, ...] lift of a contraction, with the given defect operator.
Operator isometric_lift(const Operator& t, const Operator& d, int depth);

// Sets the copy axis for an operator whose largest copy jump is u.
Operator with_copy_jump(const Operator& op, int u);

// Residuals ||(V* J - J T*) J*|| per member on the safe window.
CheckReport coextension_report(const OperatorTuple& original, const OperatorTuple& dilation, const Operator& embed);
// Inclusion of the host as copy 0 of host (+) depth copies.
Operator tail_embedding(int host_dim, int depth);

// Operator pushforwards.
OperatorTuple pi(const Operator& t1, const Operator& t2, const ModelSpace& space, double tol = 1e-9);
OperatorTuple pi_eta(const OperatorTuple& t7, cplx eta);
OperatorTuple axis7(const Operator& t1, const Operator& t6, const Operator& t7, const ModelSpace& space,
                    double tol = 1e-9);
OperatorTuple gamma3(const Operator& t1, const Operator& t2, const Operator& v3, const ModelSpace& space,
                     double tol = 1e-9);

}  // namespace opdil
