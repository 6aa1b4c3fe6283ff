#ifndef GKKM_MODEL_HPP
#define GKKM_MODEL_HPP

#include <vector>

#include "gkkm/halfint.hpp"

namespace gkkm {

/// Physical parameters of the generalized monopole Hamiltonian.
struct ModelParams {
    double mu = 1.0;                       ///< NUT parameter, > 0
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0; ///< potential couplings; c2, c3 >= 0

    void validate() const;
    bool couplings_zero() const { return c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0; }
};

/// Joint eigenvalue sector of the two central integrals: q for the charge
/// operator, m for the axial angular momentum.  Single-valuedness requires
/// 2q and m-q integral; both are enforced by the Half representation plus
/// validate().
struct Sector {
    Half q, m;

    void validate() const;
};

/// Derived sector indices.  m1 = sqrt((m-q)^2 + c2), m2 = sqrt((m+q)^2 + c3);
/// delta1/2 are their excesses over |m-q|, |m+q|; m_plus is the half-integer
/// (|m+q| + |m-q|)/2.
struct DeltaPair {
    double m1 = 0, m2 = 0;
    double delta1 = 0, delta2 = 0;
    Half m_plus;

    double delta_sum_half() const { return 0.5 * (delta1 + delta2); }
};

struct SphericalQN {
    int n_r = 0; ///< radial node count
    Half j;      ///< total momentum label, j - m_plus a nonnegative integer
};

struct ParabolicQN {
    int n1 = 0, n2 = 0;
};

DeltaPair deltas(const Sector& sector, const ModelParams& params);

/// (j + (d1+d2)/2)(j + (d1+d2)/2 + 1): the angular separation constant.
double separation_constant_A(Half j, const DeltaPair& dp);

/// All (n_r, j) with n_r + j + 1 = n, j >= m_plus.  Empty when n < m_plus + 1
/// or n - m_plus is not an integer.
std::vector<SphericalQN> enumerate_spherical(Half n, const Sector& sector,
                                             const ModelParams& params);

/// All (n1, n2) with n1 + n2 = n - m_plus - 1.
std::vector<ParabolicQN> enumerate_parabolic(Half n, const Sector& sector,
                                             const ModelParams& params);

Half principal_n(const SphericalQN& qn);
Half principal_n(const ParabolicQN& qn, const DeltaPair& dp);

} // namespace gkkm

#endif
