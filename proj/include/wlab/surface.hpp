#pragma once

// Parametric surfaces, jets, fundamental forms, curvatures and the linear
// Weingarten residuals.
//
// Conventions:
//   N = (Xu x Xv) / |Xu x Xv|, so the sign of H follows the parametrization.
//   k1 >= k2 always; relations are checked under both labelings elsewhere.
//   Lengths are in abstract units; nothing here enforces a unit system.

#include "wlab/error.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

namespace wlab {

using Vec3 = Eigen::Vector3d;

struct Domain {
    double u0 = 0, u1 = 1;
    double v0 = 0, v1 = 1;
    bool u_periodic = false;
    bool v_periodic = false;

    double u_extent() const { return u1 - u0; }
    double v_extent() const { return v1 - v0; }
};

/// Position and all partial derivatives up to second order at one parameter point.
struct Partials {
    Vec3 p = Vec3::Zero();
    Vec3 xu = Vec3::Zero(), xv = Vec3::Zero();
    Vec3 xuu = Vec3::Zero(), xuv = Vec3::Zero(), xvv = Vec3::Zero();
};

/// An evaluatable map (u,v) -> R^3 over a rectangle, optionally with analytic
/// partials. Copies share the (immutable) callables.
class ParamSurface {
public:
    using PositionFn = std::function<Vec3(double, double)>;
    using PartialsFn = std::function<Partials(double, double)>;

    ParamSurface(Domain domain, PositionFn position, PartialsFn partials = {});

    const Domain& domain() const { return domain_; }
    Vec3 position(double u, double v) const { return (*position_)(u, v); }
    bool has_analytic_partials() const { return static_cast<bool>(partials_); }

    /// Uses the analytic supplier when present, finite differences otherwise.
    Partials partials(double u, double v) const;
    Partials analytic_partials(double u, double v) const;
    /// 4th-order central differences of the position map with step fd_step().
    Partials numeric_partials(double u, double v) const;

    /// h = 1e-4 * max(1, largest domain extent).
    double fd_step() const;

    /// Same position map without the analytic supplier.
    ParamSurface numeric_twin() const;
    /// x -> R x + t applied to positions and derivatives.
    ParamSurface rigid_motion(const Eigen::Matrix3d& rotation, const Vec3& translation) const;

    /// Throws OutOfDomain unless (u,v) admits evaluation. Finite differences need a
    /// margin of 2h from non-periodic edges.
    void check_domain(double u, double v, bool numeric) const;

private:
    Domain domain_;
    std::shared_ptr<const PositionFn> position_;
    std::shared_ptr<const PartialsFn> partials_;
};

struct JetPoint {
    Vec3 p, xu, xv, xuu, xuv, xvv;
    Vec3 normal;
};

/// Builds a jet from raw partials; throws DegenerateJet when |Xu x Xv| < 1e-12.
JetPoint make_jet(const Partials& d);
JetPoint evaluate_jet(const ParamSurface& surface, double u, double v);

struct FundamentalForms {
    double E, F, G;
    double e, f, g;
    double W; // EG - F^2
};

FundamentalForms fundamental_forms(const JetPoint& jet);

/// Determinant-based quantities: [Xu,Xv,Xuu] etc. and the numerators H1, K1 with
/// H = H1 / (2 W^{3/2}), K = K1 / W^2.
struct DeterminantForms {
    double E, F, G, W;
    double det_uu, det_uv, det_vv;
    double H1, K1;
};

DeterminantForms determinant_forms(const JetPoint& jet);

struct CurvatureData {
    double H, K;
    double k1, k2; // k1 >= k2
    double H1, K1;
};

CurvatureData curvature(const JetPoint& jet);

/// sqrt(H^2 - K), evaluated in an orthonormal tangent basis so that umbilics give
/// rounding-level gaps (~1e-16) instead of the ~1e-8 of the direct difference.
double principal_half_gap(const JetPoint& jet);

/// k1 = m k2 + n. m = 0 is rejected.
class LWRelation {
public:
    LWRelation(double m, double n);

    double m() const { return m_; }
    double n() const { return n_; }

    /// The same line read with the roles of k1 and k2 exchanged: k2 = (1/m) k1 - n/m.
    LWRelation swapped() const { return {1.0 / m_, -n_ / m_}; }

private:
    double m_, n_;
};

/// k1 - m k2 - n with k1 the larger principal curvature.
double lw_residual_linear(const CurvatureData& c, const LWRelation& rel);
/// (1-m) H1 - 2 W^{3/2} n + (1+m) sqrt(H1^2 - 4 W K1).
double lw_residual_signed(const JetPoint& jet, const LWRelation& rel);
/// (-m H1^2 + (1+m)^2 W K1 + n^2 W^3)^2 - n^2 (1-m)^2 H1^2 W^3.
double lw_residual_poly(const JetPoint& jet, const LWRelation& rel);
/// -m H1^2 + (1+m)^2 W K1, the square root of the polynomial residual when n = 0.
double lw_residual_unsquared(const JetPoint& jet, double m);

/// Magnitude of the summands of the residuals above before cancellation; used to
/// turn absolute residuals into relative ones.
double residual_scale_unsquared(const DeterminantForms& d, double m);
double residual_scale_poly(const DeterminantForms& d, const LWRelation& rel);

struct UV {
    double u, v;
};

/// Cell-centred nu x nv sample points, strictly inside the domain.
std::vector<UV> interior_grid(const Domain& domain, int nu, int nv);

} // namespace wlab
