#pragma once

#include "wlab/cyclic.hpp"
#include "wlab/ode.hpp"
#include "wlab/surface.hpp"

#include <optional>
#include <string>

namespace wlab {

/// Initial data for a' = lambda r^2, b' = mu r^2, r r'' = 1 + (lambda^2 + mu^2) r^4 + r'^2.
/// The initial values are imposed at u_start inside [u_min, u_max].
struct RiemannExampleParams {
    double lambda = 0, mu = 0;
    double r0 = 1, r0_d = 0;
    double u_start = 0;
    double u_min = -1, u_max = 1;
};

struct RiemannExample {
    RiemannTypeSurface shape;
    ParamSurface surface;
    ode::DenseSolution solution; // state (r, r', a, b)
    bool truncated = false;      // the u-range was shortened
    std::string truncation_reason;
    RiemannExampleParams params;
};

/// Right side r'' of the radius equation.
double riemann_radius_acceleration(double r, double r_d, double lambda, double mu);

/// Integrates the Riemann-example system with adaptive RK 5(4) (tolerance 1e-10).
/// Throws RadiusCollapse if r drops to 1e-8; blow-up (NonFinite) truncates the
/// range and sets the flag instead.
RiemannExample gen_riemann_example(const RiemannExampleParams& p);

/// Arc-length profile (rho(s), z(s)) with tangent angle theta, revolved about the z axis.
struct RotationalProfileParams {
    double rho0 = 1, z0 = 0, theta0 = 0;
    double s_min = 0, s_max = 1;
    double s_start = 0;
};

struct RotationalProfile {
    ode::DenseSolution solution; // state (rho, z, theta)
    double s_min = 0, s_max = 0; // integrated range, possibly truncated
    bool truncated = false;
    std::string truncation_reason;

    double rho(double s) const { return solution(s)[0]; }
    double z(double s) const { return solution(s)[1]; }
    double theta(double s) const { return solution(s)[2]; }
};

struct RotationalLW {
    RotationalProfile profile;
    ParamSurface surface; // X(s, v) = (rho cos v, rho sin v, z), v in [0, 2 pi]
    LWRelation relation;
};

/// Meridian curvature theta' = m sin(theta)/rho + n, i.e. the meridian curvature is
/// m times the parallel curvature plus n. Stops (truncating, with the flag set) when
/// rho <= 1e-8.
RotationalLW gen_rotational_lw(const LWRelation& rel, const RotationalProfileParams& p);

enum class FixtureKind { Sphere, Cylinder, Torus, Catenoid };

struct FixtureParams {
    FixtureKind kind = FixtureKind::Sphere;
    double size = 1;   // sphere R, cylinder r, torus R (centre circle), catenoid c
    double tube = 0.5; // torus tube radius
    double height = 2; // cylinder/catenoid axial extent (catenoid: |u| <= height / 2 before scaling)
};

/// Analytic parametrizations with exact derivatives:
///   sphere    (R cos u cos v, R cos u sin v, R sin u),   u in (-pi/2, pi/2)
///   cylinder  (r cos v, r sin v, u)
///   torus     ((R + rho cos u) cos v, (R + rho cos u) sin v, rho sin u), u in [0, 2 pi]
///   catenoid  (c cosh(u/c) cos v, c cosh(u/c) sin v, u)
/// v ranges over [0, 2 pi] and is periodic. Throws InvalidParameter on bad sizes.
ParamSurface gen_fixture(const FixtureParams& p);

std::optional<FixtureKind> parse_fixture_kind(const std::string& name);
std::string to_string(FixtureKind kind);

} // namespace wlab
