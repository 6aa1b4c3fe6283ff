#include "gkkm/qalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gkkm/errors.hpp"
#include "gkkm/spectra.hpp"

namespace gkkm {

namespace {
constexpr double kBig = 1048576.0 * 3.0;  // 2^20 * 3
}

StructureConstants structure_constants(double E, const Sector& sector,
                                       const ModelParams& params) {
    params.validate();
    sector.validate();
    const double mu = params.mu;
    const double q = sector.q.value();
    const double m = sector.m.value();
    const double c1 = params.c1, c2 = params.c2, c3 = params.c3, c4 = params.c4;
    StructureConstants k;
    k.r_aa = 0;
    k.r_ab = 2;
    k.r_a = 0;
    k.r_b = c2 + c3;
    k.r_1 = -4 * mu * E * q * m + 4 / mu * q * q * q * m + c1 * q * m +
            (c2 - c3) * mu * E + (c3 - c2) / mu * q * q - c1 * (c2 - c3) / 4;
    k.s_aa = 0;
    k.s_a = 8 * E - 4 * q * q / (mu * mu) - 4 * c4;
    k.s_1 = 2 * mu * mu * E * E - 8 * E * q * q - 4 * E * m * m +
            4 * q * q * q * q / (mu * mu) + 2 * q * q * m * m / (mu * mu) +
            (4 - c1 * mu) * E +
            (-2 + c1 * mu + 2 * c4 * mu * mu) / (mu * mu) * q * q +
            2 * c4 * m * m + (c1 * c1 - 16 * c4) / 8;
    return k;
}

CasimirValue casimir_value(double E, const Sector& sector,
                           const ModelParams& params, Mode mode) {
    params.validate();
    sector.validate();
    const double mu = params.mu;
    const double q = sector.q.value();
    const double m = sector.m.value();
    const double c1 = params.c1, c2 = params.c2, c3 = params.c3, c4 = params.c4;
    // verbatim source polynomial
    const double K_printed =
        4 * mu * mu * E * E * m + 4 * mu * mu * E * E * q * q +
        mu * mu * (c2 + c3) * E * E - 8 * E * std::pow(q, 4) -
        16 * E * q * q * m * m - 2 * c1 * mu * E * q * q +
        2 * (c2 + c3 - c1 * mu) * E * m * m +
        (-2 * c2 - 2 * c3 + 2 * c2 * c3 - c1 * c2 * mu / 2 - c1 * c3 * mu / 2) * E +
        4 * (c2 - c3) * E * q * m + 4 * std::pow(q, 6) / (mu * mu) +
        8 * std::pow(q, 4) * m * m / (mu * mu) + 2 * c1 * std::pow(q, 4) / mu +
        (-c2 - c3 + 2 * c1 * mu + 4 * c4 * mu * mu) / (mu * mu) * q * q * m * m -
        2 * (c2 - c3) / (mu * mu) * m * q * q * q +
        (4 * (c2 + c3 - c2 * c3) + 2 * mu * c1 * (c2 + c3) +
         4 * mu * mu * (c1 * c1 - c2 * c4 - c3 * c4)) /
            (4 * mu * mu) * q * q -
        2 * c4 * (c2 - c3) * q * m +
        (std::pow(c1, 4) / 4 - c2 * c4 - c3 * c4) * m * m +
        (c1 * c1 * (c2 + c3) + 16 * c4 * (c2 + c3 - c2 * c3)) / 16;
    if (mode == Mode::printed) return {K_printed};
    // matrix-representation variant: three terms differ
    const double patch = 4 * mu * mu * E * E * (m * m - m) +
                         (c1 * c1 - std::pow(c1, 4)) * m * m / 4 -
                         0.75 * c1 * c1 * q * q;
    return {K_printed + patch};
}

Matrix casimir_general(const Matrix& A, const Matrix& B, const Matrix& C,
                       const StructureConstants& k) {
    check_dims(A, B);
    check_dims(A, C);
    const Matrix A2 = A * A;
    const Matrix B2 = B * B;
    return C * C - k.r_aa * anticommutator(A2, B) -
           k.r_ab * anticommutator(A, B2) +
           (k.r_aa * k.r_ab - k.r_a) * anticommutator(A, B) +
           (k.r_ab * k.r_ab - k.r_b) * B2 +
           (k.r_ab * k.r_a - 2 * k.r_1) * B + (2 * k.s_aa / 3.0) * (A2 * A) +
           (k.s_a + k.s_aa * k.r_ab / 3.0 + k.r_aa * k.r_aa) * A2 +
           (k.s_aa * k.r_b / 3.0 + k.r_aa * k.r_a + 2 * k.s_1) * A;
}

double phi_general(double x, double u, const StructureConstants& k,
                   CasimirValue K) {
    if (k.r_ab == 0) throw GammaZero("phi_general: r_ab = 0");
    const double g = k.r_ab, al = k.r_aa, de = k.r_a, e = k.r_b, ze = k.r_1;
    const double a = k.s_aa, d = k.s_a, z = k.s_1;
    const double y = x + u;
    const double t = 2.0 * y;
    const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2, g5 = g4 * g,
                 g6 = g4 * g2, g8 = g4 * g4;
    const double t1 = t - 1.0, t1_2 = t1 * t1, t1_4 = t1_2 * t1_2;
    double phi = -3072.0 * g6 * K.K * t1_2;
    phi += -48.0 * g6 * (al * al * e - al * de * g + a * e * g - d * g2) *
           (t - 3.0) * t1_4 * (t + 1.0);
    phi += g8 * (3.0 * al * al + 4.0 * a * g) * (t - 3.0) * (t - 3.0) * t1_4 *
           (t + 1.0) * (t + 1.0);
    {
        const double c = al * e * e - 2.0 * de * e * g + 4.0 * g2 * ze;
        phi += 768.0 * c * c;
    }
    phi += 32.0 * g4 * t1_2 * (12.0 * y * y - 12.0 * y - 1.0) *
           (3.0 * al * al * e * e - 6.0 * al * de * e * g + 2.0 * a * e * e * g +
            2.0 * de * de * g2 - 4.0 * d * e * g2 + 8.0 * g3 * z +
            4.0 * al * g2 * ze);
    phi += -256.0 * g2 * t1_2 *
           (3.0 * al * al * e * e * e - 9.0 * al * de * e * e * g +
            a * e * e * e * g + 6.0 * de * de * e * g2 - 3.0 * d * e * e * g2 +
            2.0 * de * de * g4 + 2.0 * d * e * g4 + 12.0 * e * g3 * z -
            4.0 * g5 * z + 12.0 * al * e * g2 * ze - 12.0 * de * g3 * ze +
            4.0 * al * g4 * ze);
    return phi;
}

double phi_gamma_zero(double x, double u, const StructureConstants& k,
                      CasimirValue K) {
    if (k.r_ab != 0) throw GammaZero("phi_gamma_zero: r_ab != 0");
    if (k.r_b == 0) throw EpsilonZero("phi_gamma_zero: r_b = 0");
    if (!(k.r_b > 0))
        throw std::invalid_argument("phi_gamma_zero: r_b must be positive");
    const double al = k.r_aa, de = k.r_a, e = k.r_b, ze = k.r_1;
    const double a = k.s_aa, d = k.s_a, z = k.s_1;
    const double se = std::sqrt(e);
    const double y = x + u;
    double phi = 0.25 * (-K.K / e - z / se - (de / se) * (ze / e) + ze * ze / (e * e));
    phi += -(1.0 / 12.0) *
           (3.0 * d - a * se - 3.0 * al * de / se + 3.0 * (de / se) * (de / se) -
            6.0 * z / se + 6.0 * al * ze / e - 6.0 * (de / se) * (ze / e)) * y;
    phi += 0.25 *
           (al * al + d - a * se - 3.0 * al * de / se + (de / se) * (de / se) +
            2.0 * al * ze / e) * y * y;
    phi += -(1.0 / 6.0) * (3.0 * al * al - a * se - 3.0 * al * de / se) * y * y * y;
    phi += 0.25 * al * al * y * y * y * y;
    return phi;
}

double phi_specific(double x, double u, double E, const Sector& sector,
                    const ModelParams& params) {
    const double mu = params.mu;
    const double q = sector.q.value();
    const double m = sector.m.value();
    const double c1 = params.c1, c2 = params.c2, c3 = params.c3, c4 = params.c4;
    const double y = x + u;
    const double w = 1.0 - 2.0 * y;
    const double T1 =
        c2 * c2 - 2.0 * c2 * (c3 + w * w + 4.0 * m * q) +
        (c3 + (1.0 + 2.0 * m - 2.0 * y) * (-1.0 + 2.0 * y + 2.0 * q)) *
            (c3 - (-1.0 + 2.0 * m + 2.0 * y) * (-1.0 + 2.0 * y - 2.0 * q));
    const double T2 =
        -16.0 * std::pow(q, 4) +
        4.0 * q * q * (w * w - 2.0 * c1 * mu + 8.0 * E * mu * mu) -
        mu * mu * (4.0 * (-c4 + 2.0 * E) * w * w +
                   (c1 - 4.0 * E * mu) * (c1 - 4.0 * E * mu));
    return -12288.0 / (mu * mu) * T1 * T2;
}

std::array<double, 6> phi_roots(double E, const Sector& sector,
                                const ModelParams& params) {
    const DeltaPair dp = deltas(sector, params);
    const double mu = params.mu;
    const double q = sector.q.value();
    const double rad = q * q + (params.c4 - 2.0 * E) * mu * mu;
    if (!(rad > 0)) throw ThresholdEnergy("phi roots undefined at or above threshold");
    const double W = (4.0 * q * q + mu * (params.c1 - 4.0 * E * mu)) /
                     (4.0 * std::sqrt(rad));
    return {0.5 * (1.0 - (dp.m1 - dp.m2)), 0.5 * (1.0 + (dp.m1 - dp.m2)),
            0.5 * (1.0 - (dp.m1 + dp.m2)), 0.5 * (1.0 + (dp.m1 + dp.m2)),
            0.5 - W, 0.5 + W};
}

double phi_factored(double x, double u, double E, const Sector& sector,
                    const ModelParams& params, const Calibration& calib) {
    const double mu = params.mu;
    const double q = sector.q.value();
    const double rad = q * q + (params.c4 - 2.0 * E) * mu * mu;
    if (!(rad > 0)) throw ThresholdEnergy("phi_factored at or above threshold");
    const auto roots = phi_roots(E, sector, params);
    double v = calib.phi_prefactor_sign * kBig / (mu * mu) * rad;
    const double y = x + u;
    for (double r : roots) v *= (y - r);
    return v;
}

StructureFunctionSpec phi_factored_spec(double E, const Sector& sector,
                                        const ModelParams& params,
                                        const Calibration& calib, double u) {
    StructureFunctionSpec s;
    s.form = StructureFunctionSpec::Form::factored;
    s.u = u;
    s.factored = true;
    const double mu = params.mu;
    const double q = sector.q.value();
    const double rad = q * q + (params.c4 - 2.0 * E) * mu * mu;
    if (!(rad > 0)) throw ThresholdEnergy("phi_factored at or above threshold");
    s.prefactor = calib.phi_prefactor_sign * kBig / (mu * mu) * rad;
    s.roots = phi_roots(E, sector, params);
    return s;
}

double StructureFunctionSpec::eval(double x) const {
    if (factored) {
        double v = prefactor;
        for (double r : roots) v *= (x + u - r);
        return v;
    }
    const double y = x + u;
    double v = 0;
    for (int j = 8; j >= 0; --j) v = v * y + coeffs[j];
    return v;
}

int StructureFunctionSpec::degree() const {
    if (factored) return 6;
    for (int j = 8; j >= 0; --j)
        if (coeffs[j] != 0) return j;
    return 0;
}

StructureFunctionSpec expand_phi(StructureFunctionSpec::Form form, double u,
                                 int degree,
                                 const std::function<double(double)>& eval_x) {
    if (degree > 8) throw std::invalid_argument("expand_phi: degree > 8");
    StructureFunctionSpec s;
    s.form = form;
    s.u = u;
    // Newton interpolation at x = 0..degree, then conversion to the
    // monomial basis in y = x + u (exact for polynomials of this degree)
    const int n = degree + 1;
    std::vector<double> node(n), dd(n);
    for (int i = 0; i < n; ++i) {
        node[i] = static_cast<double>(i);
        dd[i] = eval_x(node[i]);
    }
    for (int level = 1; level < n; ++level)
        for (int i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (node[i] - node[i - level]);
    // Horner expansion of the Newton form in y = x + u; node i sits at
    // y = i + u
    std::vector<double> poly(1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        // poly <- poly * (y - (node[i] + u)) + dd[i]
        poly.insert(poly.begin(), 0.0);
        const double shift = node[i] + u;
        for (size_t j = 0; j + 1 < poly.size(); ++j) poly[j] -= shift * poly[j + 1];
        poly[0] += dd[i];
    }
    for (size_t j = 0; j < poly.size() && j < 9; ++j) s.coeffs[j] = poly[j];
    return s;
}

OscillatorRealization oscillator_realization(const StructureConstants& k,
                                             double u) {
    OscillatorRealization r;
    r.k = k;
    r.u = u;
    if (k.r_ab != 0)
        r.which = OscillatorRealization::Case::gamma_nonzero;
    else if (k.r_b != 0)
        r.which = OscillatorRealization::Case::gamma_zero;
    else
        throw EpsilonZero("no oscillator realization: r_ab = r_b = 0");
    return r;
}

double OscillatorRealization::a_of(double level) const {
    const double y = level + u;
    if (which == Case::gamma_nonzero)
        return 0.5 * k.r_ab * (y * y - 0.25) - k.r_b / (2.0 * k.r_ab);
    return std::sqrt(k.r_b) * y;
}

double OscillatorRealization::b_of(double level) const {
    const double y = level + u;
    const double A = a_of(level);
    if (which == Case::gamma_nonzero) {
        const double denom = k.r_ab * k.r_ab * (y * y - 0.25);
        const double num = -(k.r_aa * A * A + k.r_a * A + k.r_1);
        if (denom == 0) {
            if (num == 0) return 0.0;  // removable (degenerate sector)
            throw NegativePhi("singular diagonal coefficient in the realization");
        }
        return num / denom;
    }
    return -(k.r_aa * A * A + k.r_a * A + k.r_1) / k.r_b;
}

double OscillatorRealization::rho2_of(double level) const {
    if (which != Case::gamma_nonzero) return 1.0;
    const double y = level + u;
    const double g = k.r_ab;
    const double g8 = std::pow(g, 8);
    return 1.0 / (4096.0 * 3.0 * g8 * y * (1.0 + y) * (1.0 + 2.0 * y) *
                  (1.0 + 2.0 * y));
}

std::vector<RepSolution> solve_representation(int p, const Sector& sector,
                                              const ModelParams& params,
                                              const Calibration& calib,
                                              Mode mode) {
    if (p < 0) throw std::invalid_argument("p must be nonnegative");
    const DeltaPair dp = deltas(sector, params);
    // width condition: the quantization value equals p + 1 + f*(m1+m2)
    const double D = p + 1.0 + calib.eq51_m_factor * (dp.m1 + dp.m2);
    const auto energies =
        solve_quantization(D, sector, params, calib, mode, Route::algebraic);
    std::vector<RepSolution> out;
    std::ostringstream why;
    for (const auto& es : energies) {
        if (mode == Mode::reconciled && !es.window_ok) continue;
        const double mu = params.mu;
        const double q = sector.q.value();
        const double rad = q * q + (params.c4 - 2.0 * es.E) * mu * mu;
        if (!(rad > 0)) continue;
        const double W = (4.0 * q * q + mu * (params.c1 - 4.0 * es.E * mu)) /
                         (4.0 * std::sqrt(rad));
        RepSolution rs;
        rs.E = es.E;
        rs.p = p;
        rs.u = calib.alpha_sign < 0 ? 0.5 - W : 0.5 + W;
        bool positive = true;
        rs.phi_values.reserve(p);
        for (int kk = 1; kk <= p; ++kk) {
            const double v = phi_factored(kk, rs.u, es.E, sector, params, calib);
            if (!(v > 0)) {
                positive = false;
                why << "Phi(" << kk << ") = " << v << " at E = " << es.E << "; ";
            }
            rs.phi_values.push_back(v);
        }
        if (!positive && mode == Mode::reconciled) continue;
        out.push_back(std::move(rs));
    }
    if (out.empty())
        throw NoUnitaryRep("no unitary representation of dimension " +
                           std::to_string(p + 1) + ": " + why.str());
    return out;
}

} // namespace gkkm
