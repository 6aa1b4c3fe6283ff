#ifndef GKKM_CALIBRATION_HPP
#define GKKM_CALIBRATION_HPP

#include <cstdint>
#include <map>
#include <string>

namespace gkkm {

/// Evaluation mode: `printed` evaluates the source formulas verbatim and
/// reports their defects; `reconciled` applies the calibrated resolutions
/// recorded in the calibration file.
enum class Mode { printed, reconciled };

inline const char* mode_name(Mode m) {
    return m == Mode::printed ? "printed" : "reconciled";
}

/// Empirically fixed resolutions of the under-determined signs and factors,
/// each pinned against the finite-difference eigensolver or a cross-form
/// identity.  Shipped in-repo as a flat key=value file; `verify --recalibrate`
/// regenerates every key and fails on drift.
struct Calibration {
    double alpha_sign = -1.0;        ///< sign applied to the printed 1/r coefficient
    double c1_factor = 0.5;          ///< fraction of c1 entering that coefficient
    double n_offset = 0.0;           ///< additive offset in the quantization count
    double phi_prefactor_sign = -1.0;///< sign of the factored-form prefactor
    double eq51_m_factor = 0.5;      ///< weight of (m1+m2) in the representation width
    double ladder_weight_factor = 2.0;///< f_n over the su(1,1) weight
    double scaled_x2_sign = 1.0;     ///< sign of the x^2 term in the scaled radial operator
    double parabolic_k_sign = -1.0;  ///< sign of the k-terms in the parabolic counts
    double phi_general_norm = 1.0;   ///< generic-form over system-form normalization

    static Calibration reconciled();
    static Calibration printed();
    static Calibration load(const std::string& path);
    void save(const std::string& path) const;

    /// Canonical file rendering (what ships in-repo and what recalibration
    /// compares against, byte for byte).
    std::string canonical_text() const;

    /// FNV-1a 64-bit hash of the canonical rendering, as "0x...." hex.
    std::string hash() const;

    bool operator==(const Calibration&) const = default;
};

/// The calibration that applies under `mode`, honoring an optional file path
/// in reconciled mode (empty path = built-in reconciled values).
Calibration effective_calibration(Mode mode, const std::string& path);

uint64_t fnv1a64(const std::string& bytes);

} // namespace gkkm

#endif
