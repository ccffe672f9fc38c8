#pragma once

#include "opdil/dilate.hpp"
#include "opdil/fundamentals.hpp"
#include "opdil/report.hpp"
#include "opdil/spaces.hpp"

#include <map>
#include <string>
#include <vector>

namespace opdil {

struct Expectation {
    std::string condition;  // item label in the case report
    std::string relation;   // "=0", ">0" or "<=bound"
    double reference = 0.0;
};

struct GalleryCase {
    std::string id;
    std::map<std::string, double> params;
    std::vector<Expectation> expected;
};

std::vector<std::string> gallery_ids();

// Defaults: alpha 0.5, trunc 8, depth 4, z_samples 16, samples 100, seed 7.
// Throws std::invalid_argument on unknown ids or parameters out of range.
GalleryCase make_case(const std::string& id, const std::map<std::string, double>& overrides = {});

CheckReport run_example(const GalleryCase& c);
// one section per case; verdict is the worst case verdict
CheckReport run_all(const std::map<std::string, double>& overrides = {});

// Builders, exposed for tests.
struct Exam1Data {
    ModelSpace space;
    Operator t1, t2;
    OperatorTuple tuple;              // pi(T1, T2)
    std::vector<Operator> f_closed;  // F1..F6 in closed form, zero off the defect space
};
Exam1Data exam1_data(int trunc);
// pi(V_J (x) I, I (x) S) with V_J the isometric lift of the 3x3 nilpotent block
DilationResult exam1_tensor_dilation(const Exam1Data& e, int depth);

struct Exam2Data {
    OperatorTuple closed;             // (S1, S2, S3, St1, St2) in closed form
    std::vector<Operator> g_closed;  // (G1, 2G2, 2Gt1, Gt2)
    Operator g11_lhs, g11_rhs;        // [G1*, G1], [Gt2*, Gt2]
    Operator g12_lhs_alt;         // [[I,I],[I,2I]], does not hold
    Operator g12_lhs, g12_rhs;        // [2G2*, 2G2] recomputed, [2Gt1*, 2Gt1]
};
Exam2Data exam2_data(int trunc);

struct Exam3Data {
    ModelSpace space;
    Operator g, a, b, p;
    OperatorTuple tuple;              // (A, A, B, A, B, B, P)
    std::vector<Operator> f_closed;  // F1..F6
    DilationResult dilation;          // hand-built (V1, ..., V7)
};
Exam3Data exam3_data(cplx alpha, int trunc, int depth);

struct Exam5Data {
    ModelSpace space;
    Operator g, a, s, p;
    OperatorTuple tuple;  // (A, S, P)
    DilationResult dilation;
};
Exam5Data exam5_data(cplx alpha, int trunc, int depth);

// G on l2(C^2) truncated to `trunc` blocks: [[0, alpha], [0, 0]] on block 0.
Operator exam_g(cplx alpha, int trunc);

}  // namespace opdil
