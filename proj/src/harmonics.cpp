#include "wlab/harmonics.hpp"

#include "wlab/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wlab {

namespace {

constexpr double kIdentityTolerance = 1e-7;

double sample_angle(int k, int N) { return 2.0 * std::numbers::pi * k / N; }

} // namespace

double HarmonicSpectrum::evaluate(double v) const
{
    double sum = A.empty() ? 0.0 : A[0];
    for (int j = 1; j <= J; ++j) {
        sum += A[j] * std::cos(j * v) + B[j] * std::sin(j * v);
    }
    return sum;
}

double HarmonicSpectrum::max_abs(int first) const
{
    double worst = 0;
    for (int j = std::max(first, 0); j <= J; ++j) {
        worst = std::max({worst, std::abs(A[j]), std::abs(B[j])});
    }
    return worst;
}

HarmonicSpectrum extract_harmonics(const std::function<double(double)>& f, int J, int N)
{
    if (J < 0 || N < 2 * J + 2) {
        std::ostringstream msg;
        msg << "N = " << N << " samples cannot resolve harmonics up to J = " << J << " (need N >= 2J + 2)";
        throw Error(ErrorKind::InsufficientSamples, msg.str());
    }
    std::vector<double> values(N);
    for (int k = 0; k < N; ++k) {
        values[k] = f(sample_angle(k, N));
    }
    // cos/sin of 2 pi k / N, indexed by (j k) mod N so every angle is computed once.
    std::vector<double> cosines(N), sines(N);
    for (int k = 0; k < N; ++k) {
        cosines[k] = std::cos(sample_angle(k, N));
        sines[k] = std::sin(sample_angle(k, N));
    }

    HarmonicSpectrum s;
    s.J = J;
    s.A.assign(J + 1, 0.0);
    s.B.assign(J + 1, 0.0);
    for (int j = 0; j <= J; ++j) {
        double a = 0, b = 0;
        for (int k = 0; k < N; ++k) {
            const int idx = static_cast<int>((static_cast<long>(j) * k) % N);
            a += values[k] * cosines[idx];
            b += values[k] * sines[idx];
        }
        const double weight = j == 0 ? 1.0 / N : 2.0 / N;
        s.A[j] = weight * a;
        s.B[j] = j == 0 ? 0.0 : weight * b;
    }
    return s;
}

CoefficientPair closed_form_A6_B6(double m, double curvature, double r, double beta, double gamma)
{
    const double k2 = curvature * curvature;
    const double kr2 = k2 * r * r;
    const double r6 = std::pow(r, 6);
    const double mm = (m - 1) * (m - 1);
    const double b2 = beta * beta, g2 = gamma * gamma;
    CoefficientPair c;
    c.A = -(1.0 / 32.0) * mm * k2 * r6 * (b2 * b2 + (g2 - kr2) * (g2 - kr2) + b2 * (2 * kr2 - 6 * g2));
    c.B = -(1.0 / 8.0) * mm * beta * gamma * k2 * r6 * (b2 - g2 + kr2);
    return c;
}

CoefficientPair closed_form_A4_B4_branch(double m, double curvature, double r, double alpha, double r_d)
{
    const double branch = 6 + m * (6 * m - 13);
    const double k4r8 = std::pow(curvature, 4) * std::pow(r, 8);
    CoefficientPair c;
    c.A = -(1.0 / 8.0) * branch * k4r8 * (alpha * alpha - r_d * r_d);
    c.B = (1.0 / 4.0) * branch * alpha * k4r8 * r_d;
    return c;
}

double twelfth_power_real(double a, double b)
{
    const double a2 = a * a, b2 = b * b;
    const double a4 = a2 * a2, b4 = b2 * b2;
    const double a6 = a4 * a2, b6 = b4 * b2;
    const double a8 = a4 * a4, b8 = b4 * b4;
    const double a10 = a8 * a2, b10 = b8 * b2;
    return a6 * a6 - 66 * a10 * b2 + 495 * a8 * b4 - 924 * a6 * b6 + 495 * a4 * b8 - 66 * a2 * b10 + b6 * b6;
}

double twelfth_power_imag_quarter(double a, double b)
{
    const double a2 = a * a, b2 = b * b;
    const double a4 = a2 * a2, b4 = b2 * b2;
    const double a6 = a4 * a2, b6 = b4 * b2;
    const double a8 = a4 * a4, b8 = b4 * b4;
    const double a10 = a8 * a2, b10 = b8 * b2;
    return a * b * (3 * a10 - 55 * a8 * b2 + 198 * a6 * b4 - 198 * a4 * b6 + 55 * a2 * b8 - 3 * b10);
}

TwelfthHarmonic closed_form_A12_B12(double n, double r, double a_d, double b_d)
{
    if (n == 0.0) {
        throw Error(ErrorKind::ZeroOffset, "the twelfth harmonic closed form requires n ≠ 0");
    }
    TwelfthHarmonic h;
    const double common = std::pow(n, 4) * std::pow(r, 12);
    h.A12 = h.calibration.c_A * common * twelfth_power_real(a_d, b_d);
    h.B12 = h.calibration.c_B * common * twelfth_power_imag_quarter(a_d, b_d);
    return h;
}

CoefficientPair closed_form_A3_B3(double m, double r, double a_d, double b_d, double a_dd, double b_dd)
{
    const double pre = -0.25 * (1 + m) * (1 + m) * std::pow(r, 5);
    const double diff = a_d * a_d - b_d * b_d;
    CoefficientPair c;
    c.A = pre * (a_dd * diff - 2 * a_d * b_d * b_dd);
    c.B = pre * (b_dd * diff + 2 * a_d * b_d * a_dd);
    return c;
}

std::function<double(double)> residual_along_circle(const ParamSurface& surface, const LWRelation& rel,
                                                    double u)
{
    if (rel.n() == 0.0) {
        return [surface, u, m = rel.m()](double v) { return lw_residual_unsquared(evaluate_jet(surface, u, v), m); };
    }
    return [surface, u, rel](double v) { return lw_residual_poly(evaluate_jet(surface, u, v), rel); };
}

double residual_scale_along_circle(const ParamSurface& surface, const LWRelation& rel, double u, int N)
{
    double scale = 0;
    for (int k = 0; k < N; ++k) {
        const DeterminantForms d = determinant_forms(evaluate_jet(surface, u, sample_angle(k, N)));
        const double s = rel.n() == 0.0 ? residual_scale_unsquared(d, rel.m()) : residual_scale_poly(d, rel);
        scale = std::max(scale, s);
    }
    return scale;
}

HarmonicSpectrum residual_spectrum(const ParamSurface& surface, const LWRelation& rel, double u, int J, int N)
{
    return extract_harmonics(residual_along_circle(surface, rel, u), J, N);
}

CoefficientReport verify_coefficient_identity(const ParamSurface& surface, const LWRelation& rel, double u,
                                              int j, CoefficientPair closed, double calibration, int N)
{
    if (j < 0 || N < 2 * j + 2) {
        throw Error(ErrorKind::InsufficientSamples, "harmonic index out of range for the sample count");
    }
    const HarmonicSpectrum spectrum = residual_spectrum(surface, rel, u, j, N);
    CoefficientReport rep;
    rep.u = u;
    rep.j = j;
    rep.dft_A = spectrum.A[j];
    rep.dft_B = spectrum.B[j];
    rep.closed_A = closed.A;
    rep.closed_B = closed.B;
    rep.scale = residual_scale_along_circle(surface, rel, u, N);

    const double norm2 = closed.A * closed.A + closed.B * closed.B;
    rep.ratio = norm2 > 0 ? (rep.dft_A * closed.A + rep.dft_B * closed.B) / norm2
                          : std::numeric_limits<double>::quiet_NaN();

    const double limit = kIdentityTolerance * rep.scale;
    const bool close = std::abs(rep.dft_A - calibration * closed.A) <= limit &&
                       std::abs(rep.dft_B - calibration * closed.B) <= limit;
    const bool ratio_matches = std::isfinite(rep.ratio) &&
                               std::abs(rep.ratio - calibration) <= kIdentityTolerance * std::abs(calibration) &&
                               std::abs(rep.dft_A - rep.ratio * closed.A) <= limit &&
                               std::abs(rep.dft_B - rep.ratio * closed.B) <= limit;
    rep.pass = close || ratio_matches;
    return rep;
}

std::optional<ClosedFormAt> closed_form_for_cyclic(const CyclicPointData& d, const LWRelation& rel)
{
    if (rel.n() != 0.0) {
        return std::nullopt;
    }
    return ClosedFormAt{6, closed_form_A6_B6(rel.m(), d.curvature, d.r, d.beta, d.gamma), kCyclicSixthCalibration};
}

ClosedFormAt closed_form_for_riemann_type(const RiemannPointData& d, const LWRelation& rel)
{
    if (rel.n() == 0.0) {
        return ClosedFormAt{3, closed_form_A3_B3(rel.m(), d.r, d.a_d, d.b_d, d.a_dd, d.b_dd),
                            kRiemannThirdCalibration};
    }
    const TwelfthHarmonic h = closed_form_A12_B12(rel.n(), d.r, d.a_d, d.b_d);
    return ClosedFormAt{12, {h.A12, h.B12}, 1.0};
}

void write_coefficient_csv(std::ostream& out, const std::vector<CoefficientReport>& rows)
{
    out << "u,j,dft_A,dft_B,closed_A,closed_B,ratio,pass\n";
    for (const auto& r : rows) {
        out << format_g12(r.u) << ',' << r.j << ',' << format_g12(r.dft_A) << ',' << format_g12(r.dft_B) << ',';
        if (r.has_closed) {
            out << format_g12(r.closed_A) << ',' << format_g12(r.closed_B) << ','
                << (std::isfinite(r.ratio) ? format_g12(r.ratio) : std::string()) << ','
                << (r.pass ? "true" : "false");
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

} // namespace wlab
