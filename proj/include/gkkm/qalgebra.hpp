#ifndef GKKM_QALGEBRA_HPP
#define GKKM_QALGEBRA_HPP

#include <array>
#include <functional>
#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/matrix.hpp"
#include "gkkm/model.hpp"

namespace gkkm {

/// Scalars of the quadratic algebra
///   [A,B] = C,
///   [A,C] = r_aa A^2 + r_ab {A,B} + r_a A + r_b B + r_1,
///   [B,C] = s_aa A^2 - r_ab B^2 - r_aa {A,B} + s_a A - r_a B + s_1,
/// after fixing the Abelian eigenvalues (E, q, m).
struct StructureConstants {
    double r_aa = 0, r_ab = 0, r_a = 0, r_b = 0, r_1 = 0;
    double s_aa = 0, s_a = 0, s_1 = 0;
};

struct CasimirValue {
    double K = 0;
};

/// Deformed-oscillator realization data: the diagonal coefficient functions
/// a(N), b(N) and the squared weight rho(N)^2 of the off-diagonal assembly
/// B = b(N) + b'' rho(N) + rho(N) b.
struct OscillatorRealization {
    enum class Case { gamma_nonzero, gamma_zero };
    Case which = Case::gamma_nonzero;
    double u = 0;
    StructureConstants k;

    double a_of(double level) const;     ///< diagonal of A
    double b_of(double level) const;     ///< diagonal part of B
    double rho2_of(double level) const;  ///< squared off-diagonal weight
};

/// Structure function in one of its three forms; `coeffs[j]` multiplies
/// (x+u)^j when expanded (degree <= 8; <= 6 for this system's constants).
struct StructureFunctionSpec {
    enum class Form { general, specific, factored };
    Form form = Form::specific;
    double u = 0;
    std::array<double, 9> coeffs{};   // expanded form
    double prefactor = 0;             // factored form
    std::array<double, 6> roots{};    // in the (x+u) variable
    bool factored = false;

    double eval(double x) const;
    int degree() const;
};

StructureConstants structure_constants(double E, const Sector& sector,
                                       const ModelParams& params);

/// Casimir eigenvalue.  `printed` evaluates the source polynomial verbatim;
/// `reconciled` evaluates the variant derived from the matrix representation
/// (they differ in three terms).
CasimirValue casimir_value(double E, const Sector& sector,
                           const ModelParams& params, Mode mode);

/// Casimir combination of explicit generator matrices.
Matrix casimir_general(const Matrix& A, const Matrix& B, const Matrix& C,
                       const StructureConstants& k);

/// Structure function of the general quadratic algebra, gamma != 0 case
/// (degree 8 in x+u).  Throws GammaZero when r_ab = 0.
double phi_general(double x, double u, const StructureConstants& k,
                   CasimirValue K);

/// gamma = 0, epsilon != 0 case (degree 4).  Throws EpsilonZero.
double phi_gamma_zero(double x, double u, const StructureConstants& k,
                      CasimirValue K);

/// This system's structure function, expanded product form.
double phi_specific(double x, double u, double E, const Sector& sector,
                    const ModelParams& params);

/// Factored form: calibrated prefactor times six root factors.  Throws
/// ThresholdEnergy when q^2 + (c4-2E) mu^2 <= 0.
double phi_factored(double x, double u, double E, const Sector& sector,
                    const ModelParams& params, const Calibration& calib);

/// The six roots in the (x+u) variable, ascending-ish fixed order.
std::array<double, 6> phi_roots(double E, const Sector& sector,
                                const ModelParams& params);

StructureFunctionSpec phi_factored_spec(double E, const Sector& sector,
                                        const ModelParams& params,
                                        const Calibration& calib, double u);

/// Exact expanded coefficients by Newton interpolation of an evaluator at
/// integer nodes of x+u.
StructureFunctionSpec expand_phi(StructureFunctionSpec::Form form, double u,
                                 int degree, const std::function<double(double)>& eval_x);

struct RepSolution {
    double u = 0;
    double E = 0;
    int p = 0;
    std::vector<double> phi_values;  ///< Phi(1..p)
};

/// Finite-dimensional unitary representations of dimension p+1: energies from
/// the width condition, u from the vanishing constraint, positivity verified.
std::vector<RepSolution> solve_representation(int p, const Sector& sector,
                                              const ModelParams& params,
                                              const Calibration& calib,
                                              Mode mode = Mode::reconciled);

OscillatorRealization oscillator_realization(const StructureConstants& k, double u);

} // namespace gkkm

#endif
