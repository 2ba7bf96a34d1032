#pragma once

// Recovering (m, n) of k1 = m k2 + n from curvature samples, and classifying
// sampled surfaces: rotational, Riemann minimal example, or not linear Weingarten.

#include "wlab/cyclic.hpp"
#include "wlab/surface.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wlab {

struct CurvatureSample {
    double k1 = 0, k2 = 0;
    double u = 0, v = 0;
};

struct CurvatureSampleSet {
    std::vector<CurvatureSample> samples;

    /// max |k_i| over the samples.
    double scale() const;
};

struct LineFit {
    double m = 0, n = 0;
    double rms = 0; // rms of k1 - m k2 - n over the samples
};

struct LWFit {
    LineFit as_given;               // k1 = m k2 + n
    std::optional<LineFit> swapped; // k2 = m k1 + n; empty when k1 is constant
    double scale = 0;

    /// The labeling with the smaller rms.
    const LineFit& best() const;
};

/// Least-squares line through the (k2, k1) points, and through (k1, k2).
/// Errors: InsufficientSamples (< 3), NonFiniteInput, UnderdeterminedUmbilic
/// (every |k1 - k2| < 1e-10 scale), InsufficientSpread (k2 range < 1e-10 scale).
LWFit fit_lw(const CurvatureSampleSet& samples);

/// Samples the surface on an interior nu x nv grid (parallel when WLAB_THREADS allows).
CurvatureSampleSet sample_curvatures(const ParamSurface& surface, int nu, int nv);

enum class Verdict {
    Umbilic,                // every point umbilic: LW for any m with n = (1 - m) k
    SurfaceOfRevolution,    // LW and rotational
    RiemannMinimalExample,  // LW with (m, n) = (-1, 0), not rotational
    NonRotationalLW,        // LW, not rotational, not minimal
    NotLinearWeingarten,
};

std::string to_string(Verdict v);

struct ClassifyOptions {
    int nu = 40, nv = 40;
    double tol = 1e-6; // relative to the curvature scale
};

struct ClassificationReport {
    int samples = 0;
    double scale = 0;

    std::string fit_status; // "line", "umbilic", "constant", "k2-constant", "zero-slope"
    std::optional<LWFit> fit;
    bool is_lw = false;
    double lw_residual = 0; // rms of the better labeling (0 for umbilic/constant)

    bool is_rotational = false;
    double rotation_defect = 0; // centre-curve total variation, or v-variation of (H, K)

    bool is_minimal = false;
    double max_abs_H = 0;

    bool is_riemann_type_minimal = false;
    Verdict verdict = Verdict::NotLinearWeingarten;
    std::string verdict_text;
};

/// Generic surface: rotational symmetry is judged by the v-independence of H and K
/// along each u-circle, so v must be the angular parameter.
ClassificationReport classify(const ParamSurface& surface, const ClassifyOptions& options = {});
/// Riemann-type input: rotational iff the centre curve (a, b) is stationary.
ClassificationReport classify(const RiemannTypeSurface& shape, const ClassifyOptions& options = {});

void write_report_text(std::ostream& out, const ClassificationReport& r);
/// Two-column key,value CSV.
void write_report_csv(std::ostream& out, const ClassificationReport& r);

} // namespace wlab
