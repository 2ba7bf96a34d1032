#include "wlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wlab {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DegenerateJet: return "DegenerateJet";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::RadiusNotPositive: return "RadiusNotPositive";
    case ErrorKind::ConstantCenterCurve: return "ConstantCenterCurve";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::ZeroOffset: return "ZeroOffset";
    case ErrorKind::RadiusCollapse: return "RadiusCollapse";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::AxisCollision: return "AxisCollision";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnderdeterminedUmbilic: return "UnderdeterminedUmbilic";
    case ErrorKind::InsufficientSpread: return "InsufficientSpread";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

namespace {

constexpr double kRegularityEps = 1e-12;
constexpr double kDiscriminantClamp = 1e-12;

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.cross(b).dot(c); }

// Negative discriminants within rounding are umbilic noise and clamp to zero.
double clamp_discriminant(double value, double magnitude, const char* what)
{
    if (value >= 0) {
        return value;
    }
    if (value >= -kDiscriminantClamp * (1.0 + magnitude)) {
        return 0.0;
    }
    std::ostringstream msg;
    msg << what << " = " << value << " is negative beyond rounding";
    throw Error(ErrorKind::InternalConsistency, msg.str());
}

} // namespace

ParamSurface::ParamSurface(Domain domain, PositionFn position, PartialsFn partials)
    : domain_(domain), position_(std::make_shared<const PositionFn>(std::move(position)))
{
    if (!(domain_.u1 > domain_.u0) || !(domain_.v1 > domain_.v0)) {
        throw Error(ErrorKind::InvalidParameter, "surface domain must have positive extent");
    }
    if (partials) {
        partials_ = std::make_shared<const PartialsFn>(std::move(partials));
    }
}

double ParamSurface::fd_step() const
{
    return 1e-4 * std::max({1.0, domain_.u_extent(), domain_.v_extent()});
}

void ParamSurface::check_domain(double u, double v, bool numeric) const
{
    const double margin = numeric ? 2.0 * fd_step() : 0.0;
    auto inside = [margin](double x, double lo, double hi, bool periodic) {
        return periodic || (x >= lo + margin && x <= hi - margin);
    };
    if (!std::isfinite(u) || !std::isfinite(v) ||
        !inside(u, domain_.u0, domain_.u1, domain_.u_periodic) ||
        !inside(v, domain_.v0, domain_.v1, domain_.v_periodic)) {
        std::ostringstream msg;
        msg << "(" << u << ", " << v << ") outside [" << domain_.u0 << ", " << domain_.u1 << "] x ["
            << domain_.v0 << ", " << domain_.v1 << "]";
        if (numeric) {
            msg << " with finite-difference margin " << margin;
        }
        throw Error(ErrorKind::OutOfDomain, msg.str());
    }
}

Partials ParamSurface::partials(double u, double v) const
{
    return partials_ ? analytic_partials(u, v) : numeric_partials(u, v);
}

Partials ParamSurface::analytic_partials(double u, double v) const
{
    if (!partials_) {
        throw Error(ErrorKind::InvalidParameter, "surface has no analytic derivative supplier");
    }
    check_domain(u, v, false);
    return (*partials_)(u, v);
}

Partials ParamSurface::numeric_partials(double u, double v) const
{
    check_domain(u, v, true);
    const double h = fd_step();
    const auto& X = *position_;

    // First-derivative stencil (-f2 + 8 f1 - 8 f-1 + f-2) / 12h.
    auto d1 = [h](const Vec3& m2, const Vec3& m1, const Vec3& p1, const Vec3& p2) -> Vec3 {
        return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    };

    Partials d;
    d.p = X(u, v);
    const Vec3 um2 = X(u - 2 * h, v), um1 = X(u - h, v), up1 = X(u + h, v), up2 = X(u + 2 * h, v);
    const Vec3 vm2 = X(u, v - 2 * h), vm1 = X(u, v - h), vp1 = X(u, v + h), vp2 = X(u, v + 2 * h);
    d.xu = d1(um2, um1, up1, up2);
    d.xv = d1(vm2, vm1, vp1, vp2);
    d.xuu = (-um2 + 16.0 * um1 - 30.0 * d.p + 16.0 * up1 - up2) / (12.0 * h * h);
    d.xvv = (-vm2 + 16.0 * vm1 - 30.0 * d.p + 16.0 * vp1 - vp2) / (12.0 * h * h);

    // Mixed partial: tensor product of the first-derivative stencil.
    const double offsets[4] = {-2, -1, 1, 2};
    const double weights[4] = {1, -8, 8, -1};
    Vec3 mixed = Vec3::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            mixed += weights[i] * weights[j] * X(u + offsets[i] * h, v + offsets[j] * h);
        }
    }
    d.xuv = mixed / (144.0 * h * h);
    return d;
}

ParamSurface ParamSurface::numeric_twin() const
{
    return ParamSurface(domain_, *position_);
}

ParamSurface ParamSurface::rigid_motion(const Eigen::Matrix3d& rotation, const Vec3& translation) const
{
    auto position = position_;
    PositionFn moved = [position, rotation, translation](double u, double v) -> Vec3 {
        return rotation * (*position)(u, v) + translation;
    };
    PartialsFn moved_partials;
    if (partials_) {
        auto partials = partials_;
        moved_partials = [partials, rotation, translation](double u, double v) {
            Partials d = (*partials)(u, v);
            d.p = rotation * d.p + translation;
            d.xu = rotation * d.xu;
            d.xv = rotation * d.xv;
            d.xuu = rotation * d.xuu;
            d.xuv = rotation * d.xuv;
            d.xvv = rotation * d.xvv;
            return d;
        };
    }
    return ParamSurface(domain_, std::move(moved), std::move(moved_partials));
}

JetPoint make_jet(const Partials& d)
{
    const Vec3 cross = d.xu.cross(d.xv);
    const double norm = cross.norm();
    if (!(norm >= kRegularityEps)) {
        std::ostringstream msg;
        msg << "|Xu x Xv| = " << norm << " at p = (" << d.p.transpose() << ")";
        throw Error(ErrorKind::DegenerateJet, msg.str());
    }
    return JetPoint{d.p, d.xu, d.xv, d.xuu, d.xuv, d.xvv, cross / norm};
}

JetPoint evaluate_jet(const ParamSurface& surface, double u, double v)
{
    return make_jet(surface.partials(u, v));
}

FundamentalForms fundamental_forms(const JetPoint& jet)
{
    FundamentalForms ff{};
    ff.E = jet.xu.dot(jet.xu);
    ff.F = jet.xu.dot(jet.xv);
    ff.G = jet.xv.dot(jet.xv);
    ff.e = jet.normal.dot(jet.xuu);
    ff.f = jet.normal.dot(jet.xuv);
    ff.g = jet.normal.dot(jet.xvv);
    ff.W = ff.E * ff.G - ff.F * ff.F;
    return ff;
}

DeterminantForms determinant_forms(const JetPoint& jet)
{
    DeterminantForms d{};
    d.E = jet.xu.dot(jet.xu);
    d.F = jet.xu.dot(jet.xv);
    d.G = jet.xv.dot(jet.xv);
    // |Xu x Xv|^2 equals EG - F^2 and avoids its cancellation.
    d.W = jet.xu.cross(jet.xv).squaredNorm();
    d.det_uu = det3(jet.xu, jet.xv, jet.xuu);
    d.det_uv = det3(jet.xu, jet.xv, jet.xuv);
    d.det_vv = det3(jet.xu, jet.xv, jet.xvv);
    d.H1 = d.G * d.det_uu - 2.0 * d.F * d.det_uv + d.E * d.det_vv;
    d.K1 = d.det_uu * d.det_vv - d.det_uv * d.det_uv;
    return d;
}

// sqrt(H^2 - K) from the second fundamental form in the orthonormal tangent basis
// e1 = Xu/|Xu|, e2 = N x e1, where it is the half-difference of the eigenvalues of
// a symmetric 2x2 matrix. Algebraically equal to the determinant route but free of
// its cancellation at umbilics.
double principal_half_gap(const JetPoint& jet)
{
    const FundamentalForms ff = fundamental_forms(jet);
    const double W = jet.xu.cross(jet.xv).squaredNorm();
    const double a = ff.e / ff.E;
    const double b = (ff.E * ff.f - ff.F * ff.e) / (ff.E * std::sqrt(W));
    const double c = (ff.F * ff.F * ff.e - 2.0 * ff.E * ff.F * ff.f + ff.E * ff.E * ff.g) / (ff.E * W);
    return std::hypot(0.5 * (a - c), b);
}

CurvatureData curvature(const JetPoint& jet)
{
    const DeterminantForms d = determinant_forms(jet);
    CurvatureData c{};
    c.H1 = d.H1;
    c.K1 = d.K1;
    c.H = d.H1 / (2.0 * std::pow(d.W, 1.5));
    c.K = d.K1 / (d.W * d.W);
    clamp_discriminant(c.H * c.H - c.K, c.H * c.H + std::abs(c.K), "H^2 - K");
    const double gap = principal_half_gap(jet);
    c.k1 = c.H + gap;
    c.k2 = c.H - gap;
    return c;
}

LWRelation::LWRelation(double m, double n) : m_(m), n_(n)
{
    if (m == 0.0) {
        throw Error(ErrorKind::InvalidParameter, "linear Weingarten relation requires m ≠ 0");
    }
    if (!std::isfinite(m) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidParameter, "linear Weingarten relation requires finite m, n");
    }
}

double lw_residual_linear(const CurvatureData& c, const LWRelation& rel)
{
    return c.k1 - rel.m() * c.k2 - rel.n();
}

double lw_residual_signed(const JetPoint& jet, const LWRelation& rel)
{
    const DeterminantForms d = determinant_forms(jet);
    const double m = rel.m(), n = rel.n();
    clamp_discriminant(d.H1 * d.H1 - 4.0 * d.W * d.K1, d.H1 * d.H1 + 4.0 * d.W * std::abs(d.K1), "H1^2 - 4 W K1");
    // sqrt(H1^2 - 4 W K1) = 2 W^{3/2} sqrt(H^2 - K).
    const double W32 = std::pow(d.W, 1.5);
    const double root = 2.0 * W32 * principal_half_gap(jet);
    return (1.0 - m) * d.H1 - 2.0 * W32 * n + (1.0 + m) * root;
}

double lw_residual_poly(const JetPoint& jet, const LWRelation& rel)
{
    const DeterminantForms d = determinant_forms(jet);
    const double m = rel.m(), n = rel.n();
    const double W3 = d.W * d.W * d.W;
    const double inner = -m * d.H1 * d.H1 + (1.0 + m) * (1.0 + m) * d.W * d.K1 + n * n * W3;
    return inner * inner - n * n * (1.0 - m) * (1.0 - m) * d.H1 * d.H1 * W3;
}

double lw_residual_unsquared(const JetPoint& jet, double m)
{
    const DeterminantForms d = determinant_forms(jet);
    return -m * d.H1 * d.H1 + (1.0 + m) * (1.0 + m) * d.W * d.K1;
}

double residual_scale_unsquared(const DeterminantForms& d, double m)
{
    return (std::abs(m) + (1.0 + m) * (1.0 + m) + 1.0) * (d.H1 * d.H1 + d.W * std::abs(d.K1));
}

double residual_scale_poly(const DeterminantForms& d, const LWRelation& rel)
{
    const double W3 = d.W * d.W * d.W;
    const double s = residual_scale_unsquared(d, rel.m()) + rel.n() * rel.n() * W3;
    return s * s;
}

std::vector<UV> interior_grid(const Domain& domain, int nu, int nv)
{
    if (nu < 1 || nv < 1) {
        throw Error(ErrorKind::InvalidParameter, "grid needs at least one sample per direction");
    }
    std::vector<UV> points;
    points.reserve(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i) {
        const double u = domain.u0 + (i + 0.5) * domain.u_extent() / nu;
        for (int j = 0; j < nv; ++j) {
            points.push_back({u, domain.v0 + (j + 0.5) * domain.v_extent() / nv});
        }
    }
    return points;
}

} // namespace wlab
