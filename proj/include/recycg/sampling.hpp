/// @file sampling.hpp
/// @brief Iterate samplers that pick m snapshots out of a running solve.
#pragma once

#include "recycg/pcg.hpp"
#include "recycg/types.hpp"

namespace recycg {

enum class SamplingMethod { A, B };

/// @brief Fixed-budget snapshot store fed by a solver's iteration hook.
///
/// Method A spreads m slots over an unknown total iteration count by
/// stride doubling: every h-th iterate is offered a slot, the slot index
/// comes from the alternating floor sum
///   i_t = sum_{l=0}^{l_max} (-1)^l floor((i-1)/m^l),  s = i_t mod m,
/// and h doubles whenever i reaches h*m. l_max is the smallest exponent
/// with m^l_max > the iteration cap. Early snapshots are overwritten by
/// later, better spread ones; after T >= m offers the slots hold m distinct
/// iterations whose largest is at least T/2.
///
/// Method B stores snapshot s when the relative residual first reaches
/// 10^(-s*alpha/(m+1)), s = 1..m, with alpha = -log10(eps). One offer may
/// fill several newly crossed slots.
class SamplerState {
public:
    /// Method A sampler; m >= 2 (the slot formula needs a growing radix).
    static SamplerState method_a(int m, int iteration_cap);

    /// Method B sampler; m >= 1, eps in (0, 1).
    static SamplerState method_b(int m, double eps);

    /// Offers the payload of one iteration (relres is only used by method B).
    void offer(int iteration, double relres, const Vector& payload);

    int m() const { return m_; }
    SamplingMethod method() const { return method_; }
    int stored_count() const;

    /// Slot s (0-based); empty vector when unoccupied.
    bool occupied(int s) const { return occupied_[static_cast<std::size_t>(s)]; }
    const Vector& slot(int s) const { return slots_[static_cast<std::size_t>(s)]; }

    /// Iteration index stored in slot s, 0 when unoccupied.
    int stored_iteration(int s) const { return stored_iter_[static_cast<std::size_t>(s)]; }

private:
    SamplerState() = default;

    SamplingMethod method_ = SamplingMethod::A;
    int m_ = 0;
    std::vector<Vector> slots_;
    std::vector<bool> occupied_;
    std::vector<int> stored_iter_;

    // method A state
    int l_max_ = 0;
    std::int64_t h_ = 1;

    // method B state
    double alpha_ = 0.0;
    int next_slot_ = 1;  // 1-based next threshold to cross
};

/// Solver hook that offers the current iterate x (error sampling).
IterationObserver error_sampling_observer(SamplerState& s);

/// Solver hook that offers the current residual r instead of the iterate.
IterationObserver residual_sampling_observer(SamplerState& s);

}  // namespace recycg
