#include "gkkm/repmatrix.hpp"

#include <cmath>

#include "gkkm/errors.hpp"

namespace gkkm {

double norm2(const Matrix& m) {
    if (m.n == 0) return 0;
    // power iteration on M^T M
    std::vector<double> v(m.n, 1.0 / std::sqrt(static_cast<double>(m.n)));
    std::vector<double> w(m.n), x(m.n);
    double lam = 0, lam_prev = 0;
    for (int it = 0; it < 50; ++it) {
        // w = M v ; x = M^T w
        for (int i = 0; i < m.n; ++i) {
            double s = 0;
            for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
            w[i] = s;
        }
        for (int j = 0; j < m.n; ++j) {
            double s = 0;
            for (int i = 0; i < m.n; ++i) s += m(i, j) * w[i];
            x[j] = s;
        }
        double nrm = 0;
        for (double t : x) nrm += t * t;
        nrm = std::sqrt(nrm);
        if (nrm == 0) return 0;
        lam_prev = lam;
        lam = 0;
        for (int j = 0; j < m.n; ++j) {
            lam += v[j] * x[j];
            v[j] = x[j] / nrm;
        }
        if (it > 2 && std::fabs(lam - lam_prev) <= 1e-12 * std::fabs(lam)) break;
    }
    return std::sqrt(std::max(lam, 0.0));
}

AlgebraRep build_rep(const RepSolution& rs, const StructureConstants& k,
                     CasimirValue K) {
    (void)K;
    const int dim = rs.p + 1;
    for (int kk = 1; kk <= rs.p; ++kk)
        if (rs.phi_values[kk - 1] < 0)
            throw NegativePhi("build_rep: Phi(" + std::to_string(kk) + ") < 0");

    const OscillatorRealization osc = oscillator_realization(k, rs.u);
    AlgebraRep rep;
    rep.dim = dim;
    rep.u = rs.u;
    rep.N = Matrix(dim);
    rep.Bop_raise = Matrix(dim);
    rep.A = Matrix(dim);
    rep.B = Matrix(dim);
    for (int i = 0; i < dim; ++i) {
        rep.N(i, i) = i;
        rep.A(i, i) = osc.a_of(i);
        rep.B(i, i) = osc.b_of(i);
    }
    for (int kk = 1; kk <= rs.p; ++kk) {
        const double root = std::sqrt(rs.phi_values[kk - 1]);
        rep.Bop_raise(kk, kk - 1) = root;
        const double rho2 = osc.rho2_of(kk - 1);
        if (!(rho2 > 0))
            throw NegativePhi("build_rep: negative squared weight at level " +
                              std::to_string(kk - 1));
        const double offdiag = root * std::sqrt(rho2);
        rep.B(kk, kk - 1) = offdiag;
        rep.B(kk - 1, kk) = offdiag;
    }
    rep.Bop_lower = rep.Bop_raise.transpose();
    rep.C = commutator(rep.A, rep.B);
    return rep;
}

RelationReport verify_relations(const AlgebraRep& rep,
                                const StructureConstants& k, CasimirValue K) {
    const Matrix& A = rep.A;
    const Matrix& B = rep.B;
    const Matrix& C = rep.C;
    const Matrix I = Matrix::identity(rep.dim);
    const double nA = norm2(A), nB = norm2(B), nC = norm2(C);

    RelationReport rr;
    {
        const Matrix lhs = commutator(A, B) - C;
        rr.comm_ab = norm2(lhs) / std::max({nA * nB, nC, 1.0});
    }
    {
        const Matrix rhs = k.r_aa * (A * A) + k.r_ab * anticommutator(A, B) +
                           k.r_a * A + k.r_b * B + k.r_1 * I;
        const Matrix lhs = commutator(A, C);
        rr.rel_ac = norm2(lhs - rhs) / std::max({norm2(lhs), norm2(rhs), 1.0});
    }
    {
        const Matrix rhs = k.s_aa * (A * A) - k.r_ab * (B * B) -
                           k.r_aa * anticommutator(A, B) + k.s_a * A -
                           k.r_a * B + k.s_1 * I;
        const Matrix lhs = commutator(B, C);
        rr.rel_bc = norm2(lhs - rhs) / std::max({norm2(lhs), norm2(rhs), 1.0});
    }
    {
        const Matrix lhs = casimir_general(A, B, C, k);
        rr.casimir = norm2(lhs - K.K * I) / std::max({norm2(lhs), std::fabs(K.K), 1.0});
    }
    return rr;
}

} // namespace gkkm
