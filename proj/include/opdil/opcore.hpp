#pragma once

#include "opdil/operator.hpp"
#include "opdil/parallel.hpp"

#include <vector>

namespace opdil {

double op_norm(const Operator& a);
double op_norm(const Mat& a);

bool is_hermitian(const Mat& h, double tol = 1e-10);

// Principal square root of a PSD Hermitian operator. Eigenvalues in
// [-clamp, 0) are set to zero; anything lower is rejected.
Operator herm_sqrt(const Operator& h, double clamp = 1e-10);

double spectral_radius(const Operator& a);
double spectral_radius(const Mat& a);

struct NumericalRadiusOptions {
    int coarse = 720;
    double theta_tol = 1e-10;
    int refine = 4;  // local maxima of the coarse sweep refined by golden section
    Exec exec = Exec::parallel;
};

double numerical_radius(const Operator& a, const NumericalRadiusOptions& opt = {});
double numerical_radius(const Mat& a, const NumericalRadiusOptions& opt = {});

// tol < 0 selects the default cutoff 1e-8 * ||A||.
Subspace kernel_basis(const Operator& a, double tol = -1.0);
Subspace kernel_basis(const Mat& a, double tol = -1.0);

// Joint eigenvalues of commuting square matrices by simultaneous
// triangularization. Throws when the worst commutator exceeds commute_tol.
std::vector<std::vector<cplx>> joint_eigs(const std::vector<Operator>& ops, double commute_tol = 1e-9,
                                          double cluster_tol = 1e-7);

struct PsdPinv {
    Operator pinv;
    Operator range_proj;
    int rank = 0;
};

// Pseudo-inverse of a PSD Hermitian operator, cutoff = rel_tol * ||D||.
PsdPinv psd_pinv(const Operator& d, double rel_tol = 1e-8);

// Band metadata for f(H) computed spectrally from H.
Band spectral_band(const Operator& h, const Mat& result);

double max_commutator(const std::vector<Operator>& ops);

}  // namespace opdil
