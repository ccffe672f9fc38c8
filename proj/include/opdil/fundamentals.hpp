#pragma once

#include "opdil/operator.hpp"
#include "opdil/parallel.hpp"
#include "opdil/report.hpp"
#include "opdil/spaces.hpp"

#include <string>
#include <vector>

namespace opdil {

struct DefectData {
    Operator d;           // (I - T*T)^{1/2}
    Operator range_proj;  // onto the closed range of D
    Operator pinv;        // pseudo-inverse of D at the rank cutoff
    int rank = 0;
    bool is_projection = false;
    double sqrt_residual = 0.0;  // ||D^2 - (I - T*T)||

    Operator kernel_proj() const;  // I - range_proj
};

// Throws std::domain_error when ||T|| > 1 + 1e-8.
DefectData defect(const Operator& t, double rank_tol = 1e-8);

// Operators live on the host space and are supported on the defect range.
// gamma7: F1..F6; gamma5: G1, G2, Gt1, Gt2 (unscaled); sym: X.
struct FundamentalSet {
    TupleKind kind = TupleKind::sym;
    std::vector<std::string> names;
    std::vector<Operator> ops;
    std::vector<double> residuals;
    DefectData defect;
    ModelSpace space;

    // zero-dimensional defect space; ops are then zero operators
    bool empty() const { return defect.rank == 0; }
    // gamma5 also accepts the scaled names "2G2" and "2Gt1"
    Operator get(const std::string& name) const;
    // gamma5: (G1, 2G2, 2Gt1, Gt2); other kinds: ops unchanged
    std::vector<Operator> scaled() const;
    std::vector<std::string> scaled_names() const;
    double max_residual() const;
};

struct FundamentalEquation {
    std::string name;
    Operator rhs;  // D Y D = rhs
};

// Right-hand sides of the fundamental equations of a tuple. kind penta uses
// the pair (P2, P3) and yields the sym equation.
std::vector<FundamentalEquation> fundamental_equations(TupleKind kind, const OperatorTuple& t);

// Y = D+ rhs D+ per equation; residual ||D Y D - rhs|| on the safe window.
// Throws std::domain_error when a residual exceeds tol.
FundamentalSet solve_fundamentals(TupleKind kind, const OperatorTuple& t, double tol = 1e-9,
                                  double rank_tol = 1e-8);
// Same, but never throws on residuals (expansive last member still throws).
FundamentalSet solve_fundamentals_unchecked(TupleKind kind, const OperatorTuple& t, double rank_tol = 1e-8);

struct RhoResult {
    Operator value;
    double herm_residual = 0.0;  // ||X - X*|| before symmetrization
};

RhoResult rho_sym(const Operator& s, const Operator& p);
RhoResult rho_tetra(const Operator& t1, const Operator& t2, const Operator& t3);
// args of kind sym (arity 2) or tetra (arity 3)
RhoResult rho(TupleKind kind, const std::vector<Operator>& args);

struct ChainOptions {
    int z_samples = 32;
    double psd_tol = 1e-9;
    double radius_tol = 1e-9;
    double solve_tol = 1e-9;
    double omega_tol = 1e-7;
    Exec exec = Exec::parallel;
};

// Necessary conditions of the contraction chain, evaluated on a torus grid.
// Items carry the worst excess as residual, so the margin of a condition is
// -residual.
CheckReport chain_report(TupleKind kind, const OperatorTuple& t, const ChainOptions& opt = {});

}  // namespace opdil
