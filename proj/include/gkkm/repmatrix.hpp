#ifndef GKKM_REPMATRIX_HPP
#define GKKM_REPMATRIX_HPP

#include "gkkm/matrix.hpp"
#include "gkkm/qalgebra.hpp"

namespace gkkm {

/// Explicit (p+1)-dimensional realization of {N, b, b+, A, B, C}.  The raise
/// operator carries sqrt(Phi(k)) on its subdiagonal, so Bop_lower is the
/// transpose of Bop_raise and B is symmetric.
struct AlgebraRep {
    int dim = 0;
    Matrix N, Bop_raise, Bop_lower, A, B, C;
    double u = 0;
};

/// Throws NegativePhi if any interior Phi(k) is negative.
AlgebraRep build_rep(const RepSolution& rs, const StructureConstants& k,
                     CasimirValue K);

struct RelationReport {
    double comm_ab = 0;   ///< ||[A,B]-C|| / scale
    double rel_ac = 0;    ///< first defining relation defect / scale
    double rel_bc = 0;    ///< second defining relation defect / scale
    double casimir = 0;   ///< ||casimir_general - K I|| / scale
};

/// Residuals of all algebra relations as matrix identities, each normalized
/// by the largest operator norm involved.  Reports; the caller asserts.
RelationReport verify_relations(const AlgebraRep& rep,
                                const StructureConstants& k, CasimirValue K);

} // namespace gkkm

#endif
