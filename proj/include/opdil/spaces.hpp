#pragma once

#include "opdil/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opdil {

struct Summand {
    int fiber_dim = 1;
    int trunc_level = 1;
    bool shift = false;  // carries a truncated shift, so its top levels are unreliable
    int copy = 0;        // index of the l2 tail copy holding this summand (0 = original space)

    bool operator==(const Summand&) const = default;
};

class ModelSpace {
public:
    ModelSpace() = default;
    explicit ModelSpace(std::vector<Summand> summands);

    static ModelSpace plain(int dim);
    static ModelSpace hardy(int fiber_dim, int trunc_level, int copies = 1);
    static ModelSpace direct_sum(const std::vector<ModelSpace>& parts);
    // host followed by `depth` tail copies of itself, tagged with copy indices 0..depth
    ModelSpace with_tail(int depth) const;

    const std::vector<Summand>& summands() const { return summands_; }
    int total_dim() const;
    int copies() const;
    int min_shift_level() const;  // smallest trunc_level among shift summands, or 0 if none
    std::vector<int> offsets() const;

    bool operator==(const ModelSpace&) const = default;

private:
    std::vector<Summand> summands_;
};

struct Window {
    int margin = 0;
    int tail_margin = 0;
    Operator projector;
    std::vector<int> kept;  // basis indices kept by the projector

    int rank() const { return static_cast<int>(kept.size()); }
};

Operator hardy_shift(int fiber_dim, int trunc_level);

// Grid entries left empty are zero blocks.
using BlockGrid = std::vector<std::vector<std::optional<Operator>>>;
Operator block_assemble(const BlockGrid& layout, const std::vector<int>& row_dims, const std::vector<int>& col_dims);
Operator direct_sum(const std::vector<Operator>& blocks);

Window window(const ModelSpace& space, int margin, int tail_margin = 0);
// Smallest window on which `expr` agrees with its untruncated counterpart.
Window safe_window(const ModelSpace& space, const Operator& expr);
// ||expr * W|| on the safe window of expr.
double windowed_norm(const ModelSpace& space, const Operator& expr);
// compression W expr W restricted to kept indices
Mat compress(const Window& w, const Operator& expr);

struct OperatorTuple {
    TupleKind kind = TupleKind::plain;
    std::vector<std::string> names;
    std::vector<Operator> ops;
    ModelSpace space;

    OperatorTuple() = default;
    OperatorTuple(TupleKind k, std::vector<Operator> members, std::optional<ModelSpace> sp = std::nullopt);

    int size() const { return static_cast<int>(ops.size()); }
    int dim() const { return ops.empty() ? 0 : ops.front().rows(); }
    const Operator& operator[](int i) const { return ops.at(static_cast<size_t>(i)); }
    // 1-based access, matching T_1..T_7 style indexing
    const Operator& at1(int i) const { return ops.at(static_cast<size_t>(i - 1)); }
    const Operator& by_name(const std::string& name) const;
};

}  // namespace opdil
