#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace opdil::detail {

// Coordinate (compass) search for a local maximum; returns (value, point).
inline std::pair<double, std::vector<double>> compass_max(const std::function<double(const std::vector<double>&)>& f,
                                                          std::vector<double> x, double step, double min_step,
                                                          int max_evals = 4000) {
    double best = f(x);
    int evals = 1;
    while (step > min_step && evals < max_evals) {
        bool moved = false;
        for (size_t k = 0; k < x.size() && !moved; ++k) {
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> y = x;
                y[k] += sgn * step;
                double v = f(y);
                ++evals;
                if (v > best) {
                    best = v;
                    x = std::move(y);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return {best, x};
}

// Golden-section search for a maximum of a unimodal function on [lo, hi].
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{f1, x1} : std::pair{f2, x2};
}

}  // namespace opdil::detail
