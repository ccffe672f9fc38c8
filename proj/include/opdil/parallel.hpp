#pragma once

#include <exception>
#include <vector>

namespace opdil {

// Serial runs are the reference; the OpenMP path must reproduce them exactly.
enum class Exec { serial, parallel };

template <class F>
std::vector<double> evaluate_grid(int n, F&& f, Exec exec = Exec::parallel) {
    std::vector<double> out(static_cast<size_t>(n > 0 ? n : 0));
    if (exec == Exec::serial) {
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = f(i);
        return out;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
        try {
            out[static_cast<size_t>(i)] = f(i);
        } catch (...) {
#pragma omp critical(opdil_grid_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace opdil
