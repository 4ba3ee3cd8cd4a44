#include "recycg/sampling.hpp"

#include <cmath>

namespace recycg {

SamplerState SamplerState::method_a(int m, int iteration_cap) {
    if (m < 2) throw std::invalid_argument("sampler method A: m must be >= 2");
    if (iteration_cap < 1)
        throw std::invalid_argument("sampler method A: iteration cap must be >= 1");
    SamplerState s;
    s.method_ = SamplingMethod::A;
    s.m_ = m;
    s.slots_.resize(static_cast<std::size_t>(m));
    s.occupied_.assign(static_cast<std::size_t>(m), false);
    s.stored_iter_.assign(static_cast<std::size_t>(m), 0);
    s.l_max_ = 1;
    std::int64_t pw = m;
    while (pw <= iteration_cap) {  // smallest l_max with m^l_max > cap
        pw *= m;
        ++s.l_max_;
    }
    return s;
}

SamplerState SamplerState::method_b(int m, double eps) {
    if (m < 1) throw std::invalid_argument("sampler method B: m must be >= 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("sampler method B: eps must be in (0, 1)");
    SamplerState s;
    s.method_ = SamplingMethod::B;
    s.m_ = m;
    s.slots_.resize(static_cast<std::size_t>(m));
    s.occupied_.assign(static_cast<std::size_t>(m), false);
    s.stored_iter_.assign(static_cast<std::size_t>(m), 0);
    s.alpha_ = -std::log10(eps);
    return s;
}

void SamplerState::offer(int iteration, double relres, const Vector& payload) {
    if (method_ == SamplingMethod::A) {
        if (iteration % h_ != 0) return;
        std::int64_t it = 0;
        std::int64_t pw = 1;
        for (int l = 0; l <= l_max_; ++l) {
            const std::int64_t term = (iteration - 1) / pw;
            it += (l % 2 == 0) ? term : -term;
            pw *= m_;
        }
        const int s = static_cast<int>(it % m_);
        slots_[s] = payload;
        occupied_[s] = true;
        stored_iter_[s] = iteration;
        if (iteration == h_ * m_) h_ *= 2;
    } else {
        while (next_slot_ <= m_) {
            const double threshold = std::pow(10.0, -double(next_slot_) * alpha_ / (m_ + 1));
            if (relres > threshold) break;
            slots_[next_slot_ - 1] = payload;
            occupied_[next_slot_ - 1] = true;
            stored_iter_[next_slot_ - 1] = iteration;
            ++next_slot_;
        }
    }
}

int SamplerState::stored_count() const {
    int c = 0;
    for (bool o : occupied_)
        if (o) ++c;
    return c;
}

IterationObserver error_sampling_observer(SamplerState& s) {
    return [&s](int iter, double relres, const Vector& x, const Vector&) {
        s.offer(iter, relres, x);
    };
}

IterationObserver residual_sampling_observer(SamplerState& s) {
    return [&s](int iter, double relres, const Vector&, const Vector& r) {
        s.offer(iter, relres, r);
    };
}

}  // namespace recycg
