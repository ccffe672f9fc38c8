#pragma once

#include "opdil/fundamentals.hpp"
#include "opdil/report.hpp"
#include "opdil/spaces.hpp"

#include <string>
#include <vector>

namespace opdil {

enum class IsoKind { isometry, partial, gamma7, gamma5, penta };

std::string to_string(IsoKind k);
IsoKind iso_kind_from_string(const std::string& s);

// Pairwise windowed commutator norms.
CheckReport is_commuting(const OperatorTuple& t, double tol = 1e-9);

// isometry: every member; partial: every member, ||T|| <= 1 and TT*T = T;
// gamma7 / gamma5 / penta: the algebraic characterization of the class.
CheckReport isometry_check(IsoKind kind, const OperatorTuple& t, double tol = 1e-9);

// Residuals of the necessary conditions, restricted to Ker D.
// kind is gamma7, gamma5 or penta; penta expects the sym fundamental set of
// (P2, P3). The dilation-existence part is reported as "not decided".
CheckReport necessary_conditions(TupleKind kind, const OperatorTuple& t, const FundamentalSet& f, double tol = 1e-9);

// Commutator identity table. gamma7: ops = F1..F6; gamma5: ops = (G1, G2,
// Gt1, Gt2) unscaled, the table is built on (G1, 2G2, 2Gt1, Gt2).
CheckReport commutator_profile(TupleKind kind, const std::vector<Operator>& ops, const ModelSpace& space,
                               double tol = 1e-9);
CheckReport commutator_profile(const FundamentalSet& f, double tol = 1e-9);

// Members compressed to Ker(last member); for a partial isometry this
// kernel is jointly invariant.
std::vector<Operator> restrict_to_kernel(TupleKind kind, const OperatorTuple& t);

}  // namespace opdil
