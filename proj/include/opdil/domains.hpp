#pragma once

#include "opdil/operator.hpp"
#include "opdil/parallel.hpp"
#include "opdil/report.hpp"

#include <string>
#include <vector>

namespace opdil {

struct BlockStructure {
    int n = 0;
    int s = 0;
    std::vector<int> r;

    BlockStructure() = default;
    BlockStructure(int n, std::vector<int> r);
    // "n,s,r1,...,rs"
    static BlockStructure parse(const std::string& text);
    std::string str() const;
};

BlockStructure gamma7_structure();  // E(3;3;1,1,1)
BlockStructure gamma5_structure();  // E(3;2;1,2)

struct MuOptions {
    double tol = 1e-4;
    int grid = 64;      // initial samples per torus angle
    int max_grid = 1024;
    int refine = 8;     // grid maxima polished by compass search
    Exec exec = Exec::parallel;
};

struct MuResult {
    double value = 0.0;
    int grid = 0;                 // last grid size used
    std::vector<double> angles;   // maximizing torus angles for blocks 2..s
};

// mu_E(A) as the maximum of r(A diag(z_i I_{r_i})) over the torus, with z_1 = 1.
MuResult mu_E_detail(const Mat& a, const BlockStructure& e, const MuOptions& opt = {});
double mu_E(const Mat& a, const BlockStructure& e, double tol = 1e-4, Exec exec = Exec::parallel);

struct DomainPoint {
    TupleKind kind = TupleKind::tetra;
    std::vector<cplx> coords;

    DomainPoint() = default;
    DomainPoint(TupleKind k, std::vector<cplx> x);
    cplx operator[](int i) const { return coords.at(static_cast<size_t>(i)); }
    cplx x(int i) const { return coords.at(static_cast<size_t>(i - 1)); }  // 1-based
};

// Symmetrization maps of the domain definitions.
std::vector<cplx> gamma7_coords(const Mat& a);  // (a11, a22, minor12, a33, minor13, minor23, det)
std::vector<cplx> gamma5_coords(const Mat& a);  // (x1, x2, x3, y1, y2)
std::vector<cplx> tetra_coords(const Mat& a);   // (a11, a22, det)
std::vector<cplx> penta_coords(const Mat& a);   // (a21, tr, det)
std::vector<cplx> domain_coords(TupleKind kind, const Mat& a);

DomainPoint pi_point(cplx a, cplx b);                   // (a, b, ab, ab, a^2 b, a b^2, a^2 b^2)
DomainPoint pi_eta_point(const DomainPoint& x, cplx eta);

struct Psi3Result {
    double value = 0.0;
    int grid = 0;
    double z_angle = 0.0, w_angle = 0.0;
};

// sup over a grid x grid torus sample of |Psi3(z, w, x)|, refined once near the maximizer.
Psi3Result psi3_supnorm(const DomainPoint& x, int grid = 128);

// sup over the circle of |x2 - z x3| / |1 - x1 z|; +inf at a genuine pole.
double tetra_sup(cplx x1, cplx x2, cplx x3, int grid = 720);
bool in_tetrablock(cplx x1, cplx x2, cplx x3, double tol = 1e-9);
bool in_symmetrized_bidisc(cplx s, cplx p, double tol = 1e-9);

// Largest |a21| over 2x2 contractions with trace s and determinant p
// (-1 when (s, p) is outside the closed symmetrized bidisc).
double penta_a_bound(cplx s, cplx p, double tol = 1e-9);

bool on_K(const DomainPoint& x, double tol = 1e-6);
bool on_K1(const DomainPoint& x, double tol = 1e-6);
bool on_K0(const DomainPoint& x, double tol = 1e-6);

struct Certificate {
    Mat a;
    double residual = 0.0;          // max coordinate error
    double constraint_value = 0.0;  // mu_E(A) or ||A||
    bool success = false;
};

// Find A realizing x with mu_E(A) <= 1 (gamma7, gamma5) or ||A|| <= 1 (tetra, penta).
Certificate certificate_search(const DomainPoint& x, int budget = 10);

// conclusion: inside | boundary | outside | unknown; verdict pass iff inside or boundary
CheckReport membership(const DomainPoint& x, double tol = 1e-6);

}  // namespace opdil
