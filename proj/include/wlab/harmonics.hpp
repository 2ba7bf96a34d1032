#pragma once

// Trigonometric expansion of the linear Weingarten residual along the circles of
// a foliated surface, and the closed forms of its top coefficients.
//
// Which residual is expanded along a circle u = const:
//   n = 0:  -m H1^2 + (1+m)^2 W K1                 (no clearing power needed)
//   n != 0: the squared polynomial residual
// Both are exact trigonometric polynomials in v for cyclic and Riemann-type
// surfaces, of degree <= 6 (cyclic, n = 0), <= 3 (Riemann-type, n = 0) and
// <= 12 (Riemann-type, n != 0).

#include "wlab/cyclic.hpp"
#include "wlab/surface.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace wlab {

/// f(v) ~ A[0] + sum_{j=1..J} A[j] cos(jv) + B[j] sin(jv). B[0] is unused (zero).
struct HarmonicSpectrum {
    int J = 0;
    std::vector<double> A, B;

    double evaluate(double v) const;
    /// Largest |A_j|, |B_j| over j >= first.
    double max_abs(int first = 0) const;
};

constexpr int kDefaultHarmonicSamples = 64;

/// Discrete Fourier analysis on N equispaced samples of [0, 2 pi). Exact for trig
/// polynomials of degree <= N/2 - 1. Requires N >= 2J + 2 (InsufficientSamples).
HarmonicSpectrum extract_harmonics(const std::function<double(double)>& f, int J,
                                   int N = kDefaultHarmonicSamples);

struct CoefficientPair {
    double A = 0, B = 0;
};

/// Top coefficients of the n = 0 cyclic expansion, written in the base-curve
/// frame (t, n, b).
CoefficientPair closed_form_A6_B6(double m, double curvature, double r, double beta, double gamma);

/// Degree-4 coefficients on the branch beta = 0, gamma^2 = curvature^2 r^2, n = 0.
CoefficientPair closed_form_A4_B4_branch(double m, double curvature, double r, double alpha, double r_d);

/// a'^12 - 66 a'^10 b'^2 + ... + b'^12, i.e. Re((a' + i b')^12).
double twelfth_power_real(double a_d, double b_d);
/// a' b' (3 a'^10 - 55 a'^8 b'^2 + ... - 3 b'^10), i.e. Im((a' + i b')^12) / 4.
double twelfth_power_imag_quarter(double a_d, double b_d);

/// Calibrated prefactors: A_12 = c_A n^4 r^12 A and B_12 = c_B n^4 r^12 B, with A and
/// B the two polynomials above. Fixed by DFT of the polynomial residual.
struct TwelfthHarmonicCalibration {
    double c_A = 1.0 / 2048.0;
    double c_B = 1.0 / 512.0;
};

struct TwelfthHarmonic {
    double A12 = 0, B12 = 0;
    TwelfthHarmonicCalibration calibration;
};

/// Throws ZeroOffset when n = 0.
TwelfthHarmonic closed_form_A12_B12(double n, double r, double a_d, double b_d);

/// Degree-3 coefficients of the n = 0 Riemann-type expansion.
CoefficientPair closed_form_A3_B3(double m, double r, double a_d, double b_d, double a_dd, double b_dd);

/// Ratio between the DFT of -m H1^2 + (1+m)^2 W K1 on a cyclic surface and the
/// closed-form A_6/B_6. Reflects the orientation N = Xu x Xv / |Xu x Xv| of the
/// parametrization c + r (cos v n + sin v b).
constexpr double kCyclicSixthCalibration = -1.0;
/// Same ratio for A_3/B_3 on Riemann-type surfaces.
constexpr double kRiemannThirdCalibration = 1.0;

/// The function of v that is expanded along the circle u = const (see header note).
std::function<double(double)> residual_along_circle(const ParamSurface& surface, const LWRelation& rel,
                                                    double u);
/// Largest summand magnitude of the expanded residual along the circle.
double residual_scale_along_circle(const ParamSurface& surface, const LWRelation& rel, double u,
                                   int N = kDefaultHarmonicSamples);

/// Harmonic spectrum of the expanded residual at u.
HarmonicSpectrum residual_spectrum(const ParamSurface& surface, const LWRelation& rel, double u, int J,
                                   int N = kDefaultHarmonicSamples);

struct CoefficientReport {
    double u = 0;
    int j = 0;
    double dft_A = 0, dft_B = 0;
    double closed_A = 0, closed_B = 0;
    double ratio = 0; // least-squares dft / closed; NaN when closed is zero
    double scale = 0; // residual scale used for the relative comparison
    bool has_closed = true;
    bool pass = false;
};

/// Compares the DFT coefficient at index j against `closed` (scaled by
/// `calibration`). Passes when |dft - calibration * closed| < 1e-7 * scale in
/// both components, or when the ratio equals the calibration constant to 1e-7.
CoefficientReport verify_coefficient_identity(const ParamSurface& surface, const LWRelation& rel, double u,
                                              int j, CoefficientPair closed, double calibration = 1.0,
                                              int N = kDefaultHarmonicSamples);

/// The closed form the module knows for this foliation and relation, if any:
/// cyclic n = 0 -> j = 6; Riemann-type n = 0 -> j = 3; Riemann-type n != 0 -> j = 12.
struct ClosedFormAt {
    int j = 0;
    CoefficientPair value;
    double calibration = 1.0;
};

std::optional<ClosedFormAt> closed_form_for_cyclic(const CyclicPointData& d, const LWRelation& rel);
ClosedFormAt closed_form_for_riemann_type(const RiemannPointData& d, const LWRelation& rel);

/// CSV with columns u,j,dft_A,dft_B,closed_A,closed_B,ratio,pass. Rows without a
/// closed form leave the last four fields empty.
void write_coefficient_csv(std::ostream& out, const std::vector<CoefficientReport>& rows);

} // namespace wlab
