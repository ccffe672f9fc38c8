#include "opdil/spaces.hpp"

#include "opdil/opcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace opdil {

ModelSpace::ModelSpace(std::vector<Summand> summands) : summands_(std::move(summands)) {
    for (const auto& s : summands_) {
        if (s.fiber_dim < 1 || s.trunc_level < 1) throw std::invalid_argument("summand dimensions must be positive");
        if (s.shift && s.trunc_level < 2) throw std::invalid_argument("shift summand needs trunc_level >= 2");
    }
}

ModelSpace ModelSpace::plain(int dim) { return ModelSpace({Summand{dim, 1, false, 0}}); }

ModelSpace ModelSpace::hardy(int fiber_dim, int trunc_level, int copies) {
    std::vector<Summand> s(static_cast<size_t>(copies), Summand{fiber_dim, trunc_level, true, 0});
    return ModelSpace(std::move(s));
}

ModelSpace ModelSpace::direct_sum(const std::vector<ModelSpace>& parts) {
    std::vector<Summand> all;
    for (const auto& p : parts) all.insert(all.end(), p.summands().begin(), p.summands().end());
    return ModelSpace(std::move(all));
}

ModelSpace ModelSpace::with_tail(int depth) const {
    std::vector<Summand> all;
    for (int c = 0; c <= depth; ++c)
        for (auto s : summands_) {
            s.copy = c;
            all.push_back(s);
        }
    return ModelSpace(std::move(all));
}

int ModelSpace::total_dim() const {
    int n = 0;
    for (const auto& s : summands_) n += s.fiber_dim * s.trunc_level;
    return n;
}

int ModelSpace::copies() const {
    int c = 0;
    for (const auto& s : summands_) c = std::max(c, s.copy + 1);
    return c;
}

int ModelSpace::min_shift_level() const {
    int m = 0;
    for (const auto& s : summands_)
        if (s.shift) m = (m == 0) ? s.trunc_level : std::min(m, s.trunc_level);
    return m;
}

std::vector<int> ModelSpace::offsets() const {
    std::vector<int> off;
    int o = 0;
    for (const auto& s : summands_) {
        off.push_back(o);
        o += s.fiber_dim * s.trunc_level;
    }
    return off;
}

Operator hardy_shift(int fiber_dim, int trunc_level) {
    if (trunc_level < 2) throw std::invalid_argument("hardy_shift needs trunc_level >= 2");
    if (fiber_dim < 1) throw std::invalid_argument("hardy_shift needs fiber_dim >= 1");
    int n = fiber_dim * trunc_level;
    Mat m = Mat::Zero(n, n);
    for (int k = 0; k + 1 < trunc_level; ++k)
        for (int v = 0; v < fiber_dim; ++v) m((k + 1) * fiber_dim + v, k * fiber_dim + v) = 1.0;
    Band b;
    b.level = Axis{1, -1, 1, 0};
    return Operator(std::move(m), b);
}

Operator block_assemble(const BlockGrid& layout, const std::vector<int>& row_dims, const std::vector<int>& col_dims) {
    if (layout.size() != row_dims.size()) throw std::invalid_argument("block grid row count does not match row_dims");
    int nr = 0, nc = 0;
    for (int d : row_dims) nr += d;
    for (int d : col_dims) nc += d;
    Mat m = Mat::Zero(nr, nc);
    Band band;
    bool first = true;
    int ro = 0;
    for (size_t i = 0; i < layout.size(); ++i) {
        if (layout[i].size() != col_dims.size())
            throw std::invalid_argument("block grid row " + std::to_string(i) + " does not match col_dims");
        int co = 0;
        for (size_t j = 0; j < col_dims.size(); ++j) {
            if (const auto& blk = layout[i][j]) {
                if (blk->rows() != row_dims[i] || blk->cols() != col_dims[j])
                    throw std::invalid_argument("block (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                                std::to_string(blk->rows()) + "x" + std::to_string(blk->cols()) +
                                                ", expected " + std::to_string(row_dims[i]) + "x" +
                                                std::to_string(col_dims[j]));
                m.block(ro, co, row_dims[i], col_dims[j]) = blk->mat();
                band = first ? blk->band() : band_sum(band, blk->band());
                first = false;
            }
            co += col_dims[j];
        }
        ro += row_dims[i];
    }
    return Operator(std::move(m), band);
}

Operator direct_sum(const std::vector<Operator>& blocks) {
    BlockGrid g(blocks.size(), std::vector<std::optional<Operator>>(blocks.size()));
    std::vector<int> rd, cd;
    for (size_t i = 0; i < blocks.size(); ++i) {
        g[i][i] = blocks[i];
        rd.push_back(blocks[i].rows());
        cd.push_back(blocks[i].cols());
    }
    return block_assemble(g, rd, cd);
}

Window window(const ModelSpace& space, int margin, int tail_margin) {
    if (margin < 0 || tail_margin < 0) throw std::invalid_argument("window margins must be nonnegative");
    int lvl = space.min_shift_level();
    if (lvl > 0 && margin >= lvl)
        throw std::invalid_argument("window margin " + std::to_string(margin) + " too large for trunc_level " +
                                    std::to_string(lvl));
    int copies = space.copies();
    if (tail_margin > 0 && tail_margin >= copies)
        throw std::invalid_argument("tail margin " + std::to_string(tail_margin) + " too large for " +
                                    std::to_string(copies) + " copies");
    Window w;
    w.margin = margin;
    w.tail_margin = tail_margin;
    int n = space.total_dim();
    Mat p = Mat::Zero(n, n);
    int o = 0;
    for (const auto& s : space.summands()) {
        bool keep_copy = s.copy < copies - tail_margin;
        int keep_levels = s.shift ? s.trunc_level - margin : s.trunc_level;
        for (int k = 0; k < s.trunc_level; ++k)
            for (int v = 0; v < s.fiber_dim; ++v) {
                int idx = o + k * s.fiber_dim + v;
                if (keep_copy && k < keep_levels) {
                    p(idx, idx) = 1.0;
                    w.kept.push_back(idx);
                }
            }
        o += s.fiber_dim * s.trunc_level;
    }
    w.projector = Operator(std::move(p));
    return w;
}

Window safe_window(const ModelSpace& space, const Operator& expr) {
    if (expr.cols() != space.total_dim())
        throw std::invalid_argument("operator width " + std::to_string(expr.cols()) + " does not match space dimension " +
                                    std::to_string(space.total_dim()));
    int margin = std::max(expr.band().level.col, 0);
    int tail = std::max(expr.band().copy.col, 0);
    if (space.min_shift_level() == 0) margin = 0;
    if (space.copies() <= 1) tail = 0;
    return window(space, margin, tail);
}

double windowed_norm(const ModelSpace& space, const Operator& expr) {
    Window w = safe_window(space, expr);
    return op_norm(expr * w.projector);
}

Mat compress(const Window& w, const Operator& expr) {
    int k = w.rank();
    Mat c(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c(i, j) = expr.mat()(w.kept[static_cast<size_t>(i)], w.kept[static_cast<size_t>(j)]);
    return c;
}

OperatorTuple::OperatorTuple(TupleKind k, std::vector<Operator> members, std::optional<ModelSpace> sp)
    : kind(k), names(default_names(k)), ops(std::move(members)) {
    int arity = tuple_arity(k);
    if (arity > 0 && static_cast<int>(ops.size()) != arity)
        throw std::invalid_argument(to_string(k) + " tuple needs " + std::to_string(arity) + " members, got " +
                                    std::to_string(ops.size()));
    if (ops.empty()) throw std::invalid_argument("empty operator tuple");
    int n = ops.front().rows();
    for (const auto& op : ops)
        if (op.rows() != n || op.cols() != n) throw std::invalid_argument("tuple members must be square of equal size");
    if (names.empty())
        for (size_t i = 0; i < ops.size(); ++i) names.push_back("A" + std::to_string(i + 1));
    space = sp ? *sp : ModelSpace::plain(n);
    if (space.total_dim() != n) throw std::invalid_argument("tuple space dimension does not match members");
}

const Operator& OperatorTuple::by_name(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return ops[i];
    throw std::invalid_argument("tuple has no member named '" + name + "'");
}

}  // namespace opdil
