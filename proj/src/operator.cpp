#include "opdil/operator.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <stdexcept>

namespace opdil {

namespace {

int clamp_band(int v) { return std::clamp(v, -kUnbounded, kUnbounded); }

Axis axis_product(const Axis& a, const Axis& b) {
    Axis r;
    r.up = clamp_band(a.up + b.up);
    r.down = clamp_band(a.down + b.down);
    r.col = clamp_band(std::max({b.col, a.col + b.up, 0}));
    r.row = clamp_band(std::max({a.row, b.row + a.down, 0}));
    return r;
}

Axis axis_sum(const Axis& a, const Axis& b) {
    return {std::max(a.up, b.up), std::max(a.down, b.down), std::max(a.col, b.col), std::max(a.row, b.row)};
}

Axis axis_adjoint(const Axis& a) { return {a.down, a.up, a.row, a.col}; }

void require_finite(const Mat& m) {
    if (!m.allFinite()) throw std::invalid_argument("operator has non-finite entries");
}

}  // namespace

Band Band::unbounded() {
    Axis u{kUnbounded, kUnbounded, kUnbounded, kUnbounded};
    return {u, u};
}

Band band_product(const Band& a, const Band& b) {
    return {axis_product(a.level, b.level), axis_product(a.copy, b.copy)};
}

Band band_sum(const Band& a, const Band& b) {
    return {axis_sum(a.level, b.level), axis_sum(a.copy, b.copy)};
}

Band band_adjoint(const Band& a) { return {axis_adjoint(a.level), axis_adjoint(a.copy)}; }

Operator::Operator(Mat m, Band band) : m_(std::move(m)), band_(band) {
    if (m_.rows() < 1 || m_.cols() < 1) throw std::invalid_argument("operator dimensions must be positive");
    require_finite(m_);
}

Operator Operator::identity(int n) { return Operator(Mat::Identity(n, n)); }

Operator Operator::zero(int rows, int cols) { return Operator(Mat::Zero(rows, cols)); }

Operator Operator::adjoint() const { return Operator(m_.adjoint(), band_adjoint(band_)); }

Operator& Operator::operator+=(const Operator& o) {
    *this = *this + o;
    return *this;
}

Operator& Operator::operator-=(const Operator& o) {
    *this = *this - o;
    return *this;
}

namespace {

bool mostly_zero(const Mat& m) {
    if (m.size() < 48 * 48) return false;
    Eigen::Index nz = (m.array() != cplx(0.0)).count();
    return nz * 16 < m.size();
}

}  // namespace

// the block operators built from shifts are very sparse
Mat mat_product(const Mat& a, const Mat& b) {
    if (!mostly_zero(a) || !mostly_zero(b)) return a * b;
    Eigen::SparseMatrix<cplx> sa = a.sparseView(), sb = b.sparseView();
    return Mat(sa * sb);
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("composition needs A.cols == B.rows (" + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    return Operator(mat_product(a.mat(), b.mat()), band_product(a.band(), b.band()));
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sum of operators of different shape");
    return Operator(a.mat() + b.mat(), band_sum(a.band(), b.band()));
}

Operator operator-(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("difference of operators of different shape");
    return Operator(a.mat() - b.mat(), band_sum(a.band(), b.band()));
}

Operator operator-(const Operator& a) { return Operator(-a.mat(), a.band()); }

Operator operator*(cplx s, const Operator& a) { return Operator(s * a.mat(), a.band()); }

Operator operator*(double s, const Operator& a) { return Operator(s * a.mat(), a.band()); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

std::string to_string(TupleKind k) {
    switch (k) {
        case TupleKind::gamma7: return "gamma7";
        case TupleKind::gamma5: return "gamma5";
        case TupleKind::penta: return "penta";
        case TupleKind::tetra: return "tetra";
        case TupleKind::sym: return "sym";
        case TupleKind::plain: return "plain";
    }
    return "plain";
}

TupleKind tuple_kind_from_string(const std::string& s) {
    if (s == "gamma7") return TupleKind::gamma7;
    if (s == "gamma5") return TupleKind::gamma5;
    if (s == "penta") return TupleKind::penta;
    if (s == "tetra") return TupleKind::tetra;
    if (s == "sym") return TupleKind::sym;
    if (s == "plain") return TupleKind::plain;
    throw std::invalid_argument("unknown tuple kind '" + s + "'");
}

int tuple_arity(TupleKind k) {
    switch (k) {
        case TupleKind::gamma7: return 7;
        case TupleKind::gamma5: return 5;
        case TupleKind::penta:
        case TupleKind::tetra: return 3;
        case TupleKind::sym: return 2;
        case TupleKind::plain: return -1;
    }
    return -1;
}

std::vector<std::string> default_names(TupleKind k) {
    switch (k) {
        case TupleKind::gamma7: return {"T1", "T2", "T3", "T4", "T5", "T6", "T7"};
        case TupleKind::gamma5: return {"S1", "S2", "S3", "St1", "St2"};
        case TupleKind::penta: return {"P1", "P2", "P3"};
        case TupleKind::tetra: return {"T1", "T2", "T3"};
        case TupleKind::sym: return {"S", "P"};
        case TupleKind::plain: return {};
    }
    return {};
}

}  // namespace opdil
