#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace opdil {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Banding along one level axis of a truncated model space.
// up/down: largest level increase/decrease the operator can produce.
// col/row: number of top levels whose columns/rows differ from the
// untruncated operator.
struct Axis {
    int up = 0;
    int down = 0;
    int col = 0;
    int row = 0;

    bool operator==(const Axis&) const = default;
};

inline constexpr int kUnbounded = 1 << 16;

// Two independent level axes: Hardy levels inside a summand, and copies
// of the defect space in an l2 tail.
struct Band {
    Axis level;
    Axis copy;

    static Band unbounded();
    bool is_exact() const { return level.col == 0 && level.row == 0 && copy.col == 0 && copy.row == 0; }
    bool operator==(const Band&) const = default;
};

Band band_product(const Band& a, const Band& b);
Band band_sum(const Band& a, const Band& b);
Band band_adjoint(const Band& a);

class Operator {
public:
    Operator() = default;
    explicit Operator(Mat m, Band band = {});

    static Operator identity(int n);
    static Operator zero(int rows, int cols);

    int rows() const { return static_cast<int>(m_.rows()); }
    int cols() const { return static_cast<int>(m_.cols()); }
    bool square() const { return m_.rows() == m_.cols(); }
    const Mat& mat() const { return m_; }
    const Band& band() const { return band_; }
    Operator with_band(Band b) const { return Operator(m_, b); }

    Operator adjoint() const;
    cplx operator()(int i, int j) const { return m_(i, j); }

    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);

private:
    Mat m_;
    Band band_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator-(const Operator& a);
Operator operator*(cplx s, const Operator& a);
Operator operator*(double s, const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
// dense product with a sparse path for mostly-zero factors
Mat mat_product(const Mat& a, const Mat& b);

struct Subspace {
    Mat basis;
    int host_dim = 0;
    double tol = 0.0;

    int dim() const { return static_cast<int>(basis.cols()); }
};

enum class TupleKind { gamma7, gamma5, penta, tetra, sym, plain };

std::string to_string(TupleKind k);
TupleKind tuple_kind_from_string(const std::string& s);
int tuple_arity(TupleKind k);
std::vector<std::string> default_names(TupleKind k);

}  // namespace opdil
