#pragma once

// Surfaces foliated by circles.
//
// General cyclic surfaces sweep a circle of radius r(u) centred at c(u) in the
// normal plane of a base curve given by its curvature and torsion:
//
//     X(u,v) = c(u) + r(u) (cos v n(u) + sin v b(u)),  c' = alpha t + beta n + gamma b.
//
// Riemann-type surfaces keep the circles in horizontal planes:
//
//     X(u,v) = (a(u), b(u), u) + r(u) (cos v, sin v, 0).

#include "wlab/functions.hpp"
#include "wlab/ode.hpp"
#include "wlab/surface.hpp"

#include <optional>
#include <vector>

namespace wlab {

struct Frame {
    Vec3 t, n, b;
};

/// Arc-length parametrized curve given by curvature and torsion.
struct FrenetCurve {
    SmoothFunction curvature = SmoothFunction::constant(0);
    SmoothFunction torsion = SmoothFunction::constant(0);
    Vec3 start_point = Vec3::Zero();
    Frame start_frame{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    double u0 = 0, u1 = 1;
};

/// Centre velocity components in the Frenet frame and the circle radius.
struct CyclicFoliationData {
    SmoothFunction alpha = SmoothFunction::constant(1);
    SmoothFunction beta = SmoothFunction::constant(0);
    SmoothFunction gamma = SmoothFunction::constant(0);
    SmoothFunction radius = SmoothFunction::constant(1);
    /// Centre at u0; defaults to the curve's start point.
    std::optional<Vec3> start_center;
};

/// Integrated Frenet frame (and optionally the circle centres) along a curve.
class FrameField {
public:
    FrameField(ode::DenseSolution solution, bool has_center, std::vector<double> nodes);

    double u_min() const { return solution_.t_min(); }
    double u_max() const { return solution_.t_max(); }

    Frame frame(double u) const;
    Vec3 point(double u) const;
    /// Throws InvalidParameter when the centre was not integrated.
    Vec3 center(double u) const;

    /// Parameter values at the accepted integration steps.
    const std::vector<double>& nodes() const { return nodes_; }
    /// Largest |<e_i, e_j> - delta_ij| over the integration nodes.
    double max_gram_deviation() const;

private:
    ode::DenseSolution solution_;
    bool has_center_;
    std::vector<double> nodes_;
};

double gram_deviation(const Frame& f);
/// Classical Gram-Schmidt on (t, n, b).
Frame orthonormalize(const Frame& f);

/// Solves t' = k n, n' = -k t + s b, b' = -s n with adaptive RK 5(4) (tolerance 1e-10),
/// re-orthonormalizing whenever the frame drifts by more than 1e-10. `step` caps the
/// step length.
FrameField integrate_frenet(const FrenetCurve& curve, double step);

struct CyclicSurface {
    ParamSurface surface;
    FrameField frames;
    FrenetCurve curve;
    CyclicFoliationData data;
};

/// Builds X(u,v) = c + r (cos v n + sin v b) with analytic partials from the Frenet
/// equations. v ranges over [0, 2 pi] (periodic).
CyclicSurface build_cyclic(const FrenetCurve& curve, const CyclicFoliationData& data, double step = 0.02);

/// Values and u-derivatives of the foliation data at one u.
struct CyclicPointData {
    double curvature = 0, curvature_d = 0;
    double torsion = 0, torsion_d = 0;
    double alpha = 0, alpha_d = 0;
    double beta = 0, beta_d = 0;
    double gamma = 0, gamma_d = 0;
    double r = 1, r_d = 0, r_dd = 0;
};

CyclicPointData sample_cyclic_data(const FrenetCurve& curve, const CyclicFoliationData& data, double u);

/// Partials of the cyclic parametrization at (u, v) given the centre and frame at u.
/// The u-derivatives of the frame come from the Frenet equations.
Partials cyclic_partials(const Vec3& center, const Frame& frame, const CyclicPointData& d, double v);

struct RiemannTypeSurface {
    SmoothFunction a = SmoothFunction::constant(0);
    SmoothFunction b = SmoothFunction::constant(0);
    SmoothFunction r = SmoothFunction::constant(1);
    double u0 = -1, u1 = 1;
};

ParamSurface build_riemann_type(const RiemannTypeSurface& s);

struct RiemannPointData {
    double a = 0, a_d = 0, a_dd = 0;
    double b = 0, b_d = 0, b_dd = 0;
    double r = 1, r_d = 0, r_dd = 0;
};

RiemannPointData sample_riemann_data(const RiemannTypeSurface& s, double u);
Partials riemann_type_partials(double u, const RiemannPointData& d, double v);

/// Total variation of the centre curve (a, b) over the u-range.
double center_total_variation(const RiemannTypeSurface& s, int samples = 2001);
/// Surface of revolution iff the centre curve does not move (TV < 1e-12).
bool is_rotational(const RiemannTypeSurface& s);

/// Turning angle and speed of the planar centre curve (a(u), b(u)).
struct ArcLengthReparam {
    std::vector<double> u;
    std::vector<double> phi;
    std::vector<double> speed; // phi' = sqrt(a'^2 + b'^2)
};

/// phi = unwrapped atan2(b', a') where phi' > 1e-12, bridged linearly across zeros.
/// Throws ConstantCenterCurve when phi' < 1e-12 everywhere.
ArcLengthReparam reparam_arclength(const std::vector<double>& u, const std::vector<double>& a_d,
                                   const std::vector<double>& b_d);

} // namespace wlab
