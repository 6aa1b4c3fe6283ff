#include "gkkm/model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gkkm {

void ModelParams::validate() const {
    if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
    if (!(c2 >= 0)) throw std::invalid_argument("c2 must be >= 0");
    if (!(c3 >= 0)) throw std::invalid_argument("c3 must be >= 0");
    if (!std::isfinite(c1) || !std::isfinite(c4))
        throw std::invalid_argument("couplings must be finite");
}

void Sector::validate() const {
    // m - q integral <=> twice-values have equal parity
    if (((m.twice - q.twice) % 2) != 0)
        throw std::invalid_argument("m - q must be an integer");
}

DeltaPair deltas(const Sector& sector, const ModelParams& params) {
    params.validate();
    sector.validate();
    DeltaPair dp;
    const Half nu = sector.m - sector.q;   // integer
    const Half mq = sector.m + sector.q;   // integer
    const double anu = nu.abs().value();
    const double amq = mq.abs().value();
    dp.m1 = std::sqrt(anu * anu + params.c2);
    dp.m2 = std::sqrt(amq * amq + params.c3);
    // delta = sqrt(x^2 + c) - x written cancellation-free; exactly 0 at c = 0
    dp.delta1 = params.c2 / (dp.m1 + anu == 0 ? 1 : dp.m1 + anu);
    dp.delta2 = params.c3 / (dp.m2 + amq == 0 ? 1 : dp.m2 + amq);
    dp.m_plus = Half((nu.abs() + mq.abs()).twice / 2);
    return dp;
}

double separation_constant_A(Half j, const DeltaPair& dp) {
    const double w = j.value() + dp.delta_sum_half();
    return w * (w + 1.0);
}

std::vector<SphericalQN> enumerate_spherical(Half n, const Sector& sector,
                                             const ModelParams& params) {
    const DeltaPair dp = deltas(sector, params);
    std::vector<SphericalQN> out;
    const Half span = n - dp.m_plus;     // must be a positive integer
    if (!span.is_integer() || span.as_int() < 1) return out;
    for (Half j = dp.m_plus; j <= n - half_one; j = j + half_one) {
        SphericalQN qn;
        qn.j = j;
        qn.n_r = (n - j - half_one).as_int();
        assert(qn.n_r >= 0);
        out.push_back(qn);
    }
    return out;
}

std::vector<ParabolicQN> enumerate_parabolic(Half n, const Sector& sector,
                                             const ModelParams& params) {
    const DeltaPair dp = deltas(sector, params);
    std::vector<ParabolicQN> out;
    const Half span = n - dp.m_plus;
    if (!span.is_integer() || span.as_int() < 1) return out;
    const int total = span.as_int() - 1;  // n1 + n2
    for (int n1 = 0; n1 <= total; ++n1) out.push_back({n1, total - n1});
    return out;
}

Half principal_n(const SphericalQN& qn) {
    return Half::of_int(qn.n_r) + qn.j + half_one;
}

Half principal_n(const ParabolicQN& qn, const DeltaPair& dp) {
    return Half::of_int(qn.n1 + qn.n2) + dp.m_plus + half_one;
}

} // namespace gkkm
