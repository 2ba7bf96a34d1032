#include "wlab/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace wlab {

namespace {

constexpr double kFrameTolerance = 1e-10;
constexpr double kDriftThreshold = 1e-10;
constexpr double kStillSpeed = 1e-12;

// State layout: point, t, n, b, centre.
Vec3 block(const ode::State& y, int i) { return y.segment<3>(3 * i); }
void set_block(ode::State& y, int i, const Vec3& v) { y.segment<3>(3 * i) = v; }

Frame frame_of(const ode::State& y) { return {block(y, 1), block(y, 2), block(y, 3)}; }

double checked(double value, const char* what, double u)
{
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " is not finite at u = " << u;
        throw Error(ErrorKind::NonFiniteInput, msg.str());
    }
    return value;
}

FrameField integrate_frame(const FrenetCurve& curve, const CyclicFoliationData* data, double step)
{
    if (!(step > 0)) {
        throw Error(ErrorKind::InvalidParameter, "integration step must be positive");
    }
    if (!(curve.u1 > curve.u0)) {
        throw Error(ErrorKind::InvalidParameter, "curve parameter range must be non-empty");
    }
    const int dim = data ? 15 : 12;
    ode::State y0(dim);
    set_block(y0, 0, curve.start_point);
    const Frame start = orthonormalize(curve.start_frame);
    set_block(y0, 1, start.t);
    set_block(y0, 2, start.n);
    set_block(y0, 3, start.b);
    if (data) {
        set_block(y0, 4, data->start_center.value_or(curve.start_point));
    }

    auto rhs = [&curve, data, dim](double u, const ode::State& y) {
        const double k = checked(curve.curvature(u), "curvature", u);
        const double s = checked(curve.torsion(u), "torsion", u);
        const Vec3 t = block(y, 1), n = block(y, 2), b = block(y, 3);
        ode::State dy(dim);
        set_block(dy, 0, t);
        set_block(dy, 1, k * n);
        set_block(dy, 2, -k * t + s * b);
        set_block(dy, 3, -s * n);
        if (data) {
            const double al = checked(data->alpha(u), "alpha", u);
            const double be = checked(data->beta(u), "beta", u);
            const double ga = checked(data->gamma(u), "gamma", u);
            set_block(dy, 4, al * t + be * n + ga * b);
        }
        return dy;
    };
    auto project = [](double, ode::State& y) {
        const Frame f = frame_of(y);
        if (gram_deviation(f) > kDriftThreshold) {
            const Frame g = orthonormalize(f);
            set_block(y, 1, g.t);
            set_block(y, 2, g.n);
            set_block(y, 3, g.b);
        }
    };

    ode::Options options;
    options.rtol = kFrameTolerance;
    options.atol = kFrameTolerance;
    options.max_step = step;
    ode::Result result = ode::integrate(rhs, curve.u0, curve.u1, y0, options, {}, project);
    if (result.truncated) {
        throw Error(ErrorKind::NonFinite, "Frenet integration stopped early: " + result.reason);
    }
    std::vector<double> nodes{curve.u0};
    for (const auto& seg : result.solution.segments()) {
        nodes.push_back(seg.t0 + seg.h);
    }
    return FrameField(std::move(result.solution), data != nullptr, std::move(nodes));
}

} // namespace

FrameField::FrameField(ode::DenseSolution solution, bool has_center, std::vector<double> nodes)
    : solution_(std::move(solution)), has_center_(has_center), nodes_(std::move(nodes))
{}

Frame FrameField::frame(double u) const { return frame_of(solution_(u)); }

Vec3 FrameField::point(double u) const { return block(solution_(u), 0); }

Vec3 FrameField::center(double u) const
{
    if (!has_center_) {
        throw Error(ErrorKind::InvalidParameter, "frame field was integrated without circle centres");
    }
    return block(solution_(u), 4);
}

double FrameField::max_gram_deviation() const
{
    double worst = 0;
    for (double u : nodes_) {
        worst = std::max(worst, gram_deviation(frame(u)));
    }
    return worst;
}

double gram_deviation(const Frame& f)
{
    const Vec3 e[3] = {f.t, f.n, f.b};
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(e[i].dot(e[j]) - target));
        }
    }
    return worst;
}

Frame orthonormalize(const Frame& f)
{
    Frame g;
    g.t = f.t.normalized();
    g.n = (f.n - f.n.dot(g.t) * g.t).normalized();
    g.b = (f.b - f.b.dot(g.t) * g.t - f.b.dot(g.n) * g.n).normalized();
    return g;
}

FrameField integrate_frenet(const FrenetCurve& curve, double step)
{
    return integrate_frame(curve, nullptr, step);
}

CyclicPointData sample_cyclic_data(const FrenetCurve& curve, const CyclicFoliationData& data, double u)
{
    CyclicPointData d;
    d.curvature = curve.curvature(u);
    d.curvature_d = curve.curvature.d1(u);
    d.torsion = curve.torsion(u);
    d.torsion_d = curve.torsion.d1(u);
    d.alpha = data.alpha(u);
    d.alpha_d = data.alpha.d1(u);
    d.beta = data.beta(u);
    d.beta_d = data.beta.d1(u);
    d.gamma = data.gamma(u);
    d.gamma_d = data.gamma.d1(u);
    d.r = data.radius(u);
    d.r_d = data.radius.d1(u);
    d.r_dd = data.radius.d2(u);
    return d;
}

Partials cyclic_partials(const Vec3& center, const Frame& frame, const CyclicPointData& d, double v)
{
    const double c = std::cos(v), s = std::sin(v);
    const double k = d.curvature, tau = d.torsion, r = d.r;

    // Xu = P t + Q n + R b.
    const double P = d.alpha - r * k * c;
    const double Q = d.beta + d.r_d * c - r * tau * s;
    const double R = d.gamma + d.r_d * s + r * tau * c;
    const double dP = d.alpha_d - (d.r_d * k + r * d.curvature_d) * c;
    const double dQ = d.beta_d + d.r_dd * c - (d.r_d * tau + r * d.torsion_d) * s;
    const double dR = d.gamma_d + d.r_dd * s + (d.r_d * tau + r * d.torsion_d) * c;

    const Vec3& t = frame.t;
    const Vec3& n = frame.n;
    const Vec3& b = frame.b;
    Partials p;
    p.p = center + r * (c * n + s * b);
    p.xu = P * t + Q * n + R * b;
    p.xv = r * (-s * n + c * b);
    p.xuu = (dP - k * Q) * t + (dQ + k * P - tau * R) * n + (dR + tau * Q) * b;
    p.xuv = r * k * s * t + (-d.r_d * s - r * tau * c) * n + (d.r_d * c - r * tau * s) * b;
    p.xvv = -r * (c * n + s * b);
    return p;
}

CyclicSurface build_cyclic(const FrenetCurve& curve, const CyclicFoliationData& data, double step)
{
    const int checks = 1000;
    for (int i = 0; i <= checks; ++i) {
        const double u = curve.u0 + (curve.u1 - curve.u0) * i / checks;
        const double r = data.radius(u);
        if (!(r > 0)) {
            std::ostringstream msg;
            msg << "circle radius r(" << u << ") = " << r;
            throw Error(ErrorKind::RadiusNotPositive, msg.str());
        }
    }
    FrameField frames = integrate_frame(curve, &data, step);

    Domain domain{curve.u0, curve.u1, 0.0, 2.0 * std::numbers::pi, false, true};
    auto shared = std::make_shared<const FrameField>(frames);
    auto position = [shared, data](double u, double v) -> Vec3 {
        const Frame f = shared->frame(u);
        return shared->center(u) + data.radius(u) * (std::cos(v) * f.n + std::sin(v) * f.b);
    };
    auto partials = [shared, curve, data](double u, double v) {
        return cyclic_partials(shared->center(u), shared->frame(u), sample_cyclic_data(curve, data, u), v);
    };
    ParamSurface surface(domain, position, partials);
    return CyclicSurface{std::move(surface), std::move(frames), curve, data};
}

RiemannPointData sample_riemann_data(const RiemannTypeSurface& s, double u)
{
    RiemannPointData d;
    d.a = s.a(u);
    d.a_d = s.a.d1(u);
    d.a_dd = s.a.d2(u);
    d.b = s.b(u);
    d.b_d = s.b.d1(u);
    d.b_dd = s.b.d2(u);
    d.r = s.r(u);
    d.r_d = s.r.d1(u);
    d.r_dd = s.r.d2(u);
    return d;
}

Partials riemann_type_partials(double u, const RiemannPointData& d, double v)
{
    const double c = std::cos(v), s = std::sin(v);
    Partials p;
    p.p = Vec3(d.a + d.r * c, d.b + d.r * s, u);
    p.xu = Vec3(d.a_d + d.r_d * c, d.b_d + d.r_d * s, 1.0);
    p.xv = Vec3(-d.r * s, d.r * c, 0.0);
    p.xuu = Vec3(d.a_dd + d.r_dd * c, d.b_dd + d.r_dd * s, 0.0);
    p.xuv = Vec3(-d.r_d * s, d.r_d * c, 0.0);
    p.xvv = Vec3(-d.r * c, -d.r * s, 0.0);
    return p;
}

ParamSurface build_riemann_type(const RiemannTypeSurface& s)
{
    if (!(s.u1 > s.u0)) {
        throw Error(ErrorKind::InvalidParameter, "Riemann-type surface needs a non-empty u-range");
    }
    const int checks = 1000;
    for (int i = 0; i <= checks; ++i) {
        const double u = s.u0 + (s.u1 - s.u0) * i / checks;
        const double r = s.r(u);
        if (!(r > 0)) {
            std::ostringstream msg;
            msg << "circle radius r(" << u << ") = " << r;
            throw Error(ErrorKind::RadiusNotPositive, msg.str());
        }
    }
    Domain domain{s.u0, s.u1, 0.0, 2.0 * std::numbers::pi, false, true};
    auto position = [s](double u, double v) -> Vec3 {
        const double r = s.r(u);
        return Vec3(s.a(u) + r * std::cos(v), s.b(u) + r * std::sin(v), u);
    };
    auto partials = [s](double u, double v) { return riemann_type_partials(u, sample_riemann_data(s, u), v); };
    return ParamSurface(domain, position, partials);
}

double center_total_variation(const RiemannTypeSurface& s, int samples)
{
    if (s.a.is_constant() && s.b.is_constant()) {
        return 0.0;
    }
    double tv = 0;
    double pa = s.a(s.u0), pb = s.b(s.u0);
    for (int i = 1; i < samples; ++i) {
        const double u = s.u0 + (s.u1 - s.u0) * i / (samples - 1);
        const double a = s.a(u), b = s.b(u);
        tv += std::hypot(a - pa, b - pb);
        pa = a;
        pb = b;
    }
    return tv;
}

bool is_rotational(const RiemannTypeSurface& s) { return center_total_variation(s) < 1e-12; }

ArcLengthReparam reparam_arclength(const std::vector<double>& u, const std::vector<double>& a_d,
                                   const std::vector<double>& b_d)
{
    if (u.size() != a_d.size() || u.size() != b_d.size() || u.empty()) {
        throw Error(ErrorKind::InvalidParameter, "reparametrization needs matching non-empty samples");
    }
    const std::size_t count = u.size();
    ArcLengthReparam out;
    out.u = u;
    out.speed.resize(count);
    out.phi.assign(count, 0.0);

    std::vector<std::size_t> moving;
    for (std::size_t i = 0; i < count; ++i) {
        out.speed[i] = std::hypot(a_d[i], b_d[i]);
        if (out.speed[i] > kStillSpeed) {
            moving.push_back(i);
        }
    }
    if (moving.empty()) {
        throw Error(ErrorKind::ConstantCenterCurve,
                    "centre curve is stationary; the surface is one of revolution");
    }

    // Unwrap on the moving samples, then bridge the gaps linearly.
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double previous = 0;
    for (std::size_t k = 0; k < moving.size(); ++k) {
        const std::size_t i = moving[k];
        double angle = std::atan2(b_d[i], a_d[i]);
        if (k > 0) {
            angle += two_pi * std::round((previous - angle) / two_pi);
        }
        out.phi[i] = angle;
        previous = angle;
    }
    for (std::size_t i = 0; i < moving.front(); ++i) {
        out.phi[i] = out.phi[moving.front()];
    }
    for (std::size_t i = moving.back() + 1; i < count; ++i) {
        out.phi[i] = out.phi[moving.back()];
    }
    for (std::size_t k = 1; k < moving.size(); ++k) {
        const std::size_t lo = moving[k - 1], hi = moving[k];
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double w = (u[i] - u[lo]) / (u[hi] - u[lo]);
            out.phi[i] = (1 - w) * out.phi[lo] + w * out.phi[hi];
        }
    }
    return out;
}

} // namespace wlab
