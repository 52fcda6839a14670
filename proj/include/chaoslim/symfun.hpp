#ifndef CHAOSLIM_SYMFUN_HPP
#define CHAOSLIM_SYMFUN_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "chaoslim/errors.hpp"

namespace chaoslim {

/// Elementary symmetric functions e_0..e_k of a real sequence, computed by the
/// one-pass forward recurrence
///
///   e_j <- e_j + c_i * e_{j-1}   (j descending)
///
/// which is add-only and therefore free of the cancellation that plagues the
/// alternating Newton-identity route for mixed-sign inputs. Cost O(|c| * k).
/// For k > |c| the high-order entries are exactly zero.
[[nodiscard]] inline std::vector<double> esf(std::span<const double> c, int k) {
    if (k < 0)
        throw ValidationError("esf: order must be nonnegative");
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (double ci : c) {
        for (int j = k; j >= 1; --j)
            e[static_cast<std::size_t>(j)] += ci * e[static_cast<std::size_t>(j) - 1];
    }
    return e;
}

/// esf with Kahan-compensated accumulation per slot. Slower; selectable from
/// experiment configs when operation counts get large enough that plain
/// double accumulation is a concern.
[[nodiscard]] inline std::vector<double> esf_compensated(std::span<const double> c, int k) {
    if (k < 0)
        throw ValidationError("esf_compensated: order must be nonnegative");
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> comp(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (double ci : c) {
        for (int j = k; j >= 1; --j) {
            auto ju = static_cast<std::size_t>(j);
            double y = ci * e[ju - 1] - comp[ju];
            double t = e[ju] + y;
            comp[ju] = (t - e[ju]) - y;
            e[ju] = t;
        }
    }
    return e;
}

/// Streaming counterpart of esf(): absorb elements one at a time.
struct ESFState {
    std::vector<double> e;     // e_0..e_k so far; e[0] == 1 always
    std::size_t count = 0;     // number of elements absorbed

    explicit ESFState(int k) : e(static_cast<std::size_t>(k < 0 ? 0 : k) + 1, 0.0) {
        if (k < 0)
            throw ValidationError("ESFState: order must be nonnegative");
        e[0] = 1.0;
    }

    [[nodiscard]] int order() const { return static_cast<int>(e.size()) - 1; }
};

/// Returns the state as if c_new had been appended to the absorbed sequence.
[[nodiscard]] inline ESFState esf_incremental_absorb(ESFState state, double c_new) {
    for (std::size_t j = state.e.size() - 1; j >= 1; --j)
        state.e[j] += c_new * state.e[j - 1];
    ++state.count;
    return state;
}

} // namespace chaoslim

#endif
