#include "wlab/generators.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace wlab {

namespace {

constexpr double kOdeTolerance = 1e-10;
constexpr double kRadiusFloor = 1e-8;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ode::Options generator_options()
{
    ode::Options o;
    o.rtol = kOdeTolerance;
    o.atol = kOdeTolerance;
    return o;
}

} // namespace

double riemann_radius_acceleration(double r, double r_d, double lambda, double mu)
{
    const double r2 = r * r;
    return (1.0 + (lambda * lambda + mu * mu) * r2 * r2 + r_d * r_d) / r;
}

RiemannExample gen_riemann_example(const RiemannExampleParams& p)
{
    if (!(p.lambda >= 0) || !(p.mu >= 0)) {
        throw Error(ErrorKind::InvalidParameter, "Riemann examples need lambda >= 0 and mu >= 0");
    }
    if (!(p.r0 > 0)) {
        throw Error(ErrorKind::InvalidParameter, "initial radius r0 must be positive");
    }
    if (p.r0 <= kRadiusFloor) {
        throw Error(ErrorKind::RadiusCollapse, "initial radius r0 is below the collapse floor");
    }
    if (!(p.u_min <= p.u_start && p.u_start <= p.u_max) || !(p.u_max > p.u_min)) {
        throw Error(ErrorKind::InvalidParameter, "u_start must lie in a non-empty [u_min, u_max]");
    }
    const double lambda = p.lambda, mu = p.mu;
    auto rhs = [lambda, mu](double, const ode::State& y) {
        const double r = y[0], r_d = y[1];
        ode::State dy(4);
        dy[0] = r_d;
        dy[1] = riemann_radius_acceleration(r, r_d, lambda, mu);
        dy[2] = lambda * r * r;
        dy[3] = mu * r * r;
        return dy;
    };
    auto guard = [](double, const ode::State& y) -> std::optional<std::string> {
        if (y[0] <= kRadiusFloor) {
            return std::string("RadiusCollapse");
        }
        return std::nullopt;
    };
    ode::State y0(4);
    y0 << p.r0, p.r0_d, 0.0, 0.0;
    ode::Result result = ode::integrate_two_sided(rhs, p.u_start, p.u_min, p.u_max, y0, generator_options(), guard);
    if (result.truncated && result.reason.find("RadiusCollapse") != std::string::npos) {
        std::ostringstream msg;
        msg << "radius fell below " << kRadiusFloor << " near u in [" << result.solution.t_min() << ", "
            << result.solution.t_max() << "]";
        throw Error(ErrorKind::RadiusCollapse, msg.str());
    }

    auto sol = std::make_shared<const ode::DenseSolution>(result.solution);
    auto r_fn = SmoothFunction::from_callable(
        [sol](double u) { return (*sol)(u)[0]; }, [sol](double u) { return (*sol)(u)[1]; },
        [sol, lambda, mu](double u) {
            const ode::State y = (*sol)(u);
            return riemann_radius_acceleration(y[0], y[1], lambda, mu);
        });
    auto a_fn = SmoothFunction::from_callable(
        [sol](double u) { return (*sol)(u)[2]; },
        [sol, lambda](double u) {
            const double r = (*sol)(u)[0];
            return lambda * r * r;
        },
        [sol, lambda](double u) {
            const ode::State y = (*sol)(u);
            return 2.0 * lambda * y[0] * y[1];
        });
    auto b_fn = SmoothFunction::from_callable(
        [sol](double u) { return (*sol)(u)[3]; },
        [sol, mu](double u) {
            const double r = (*sol)(u)[0];
            return mu * r * r;
        },
        [sol, mu](double u) {
            const ode::State y = (*sol)(u);
            return 2.0 * mu * y[0] * y[1];
        });
    RiemannTypeSurface shape;
    shape.a = lambda == 0.0 ? SmoothFunction::constant(0) : a_fn;
    shape.b = mu == 0.0 ? SmoothFunction::constant(0) : b_fn;
    shape.r = r_fn;
    shape.u0 = sol->t_min();
    shape.u1 = sol->t_max();

    RiemannExample out{shape, build_riemann_type(shape), *sol, result.truncated, result.reason, p};
    return out;
}

RotationalLW gen_rotational_lw(const LWRelation& rel, const RotationalProfileParams& p)
{
    if (!(p.rho0 > kRadiusFloor)) {
        throw Error(ErrorKind::AxisCollision, "initial distance to the axis must be positive");
    }
    if (!(p.s_min <= p.s_start && p.s_start <= p.s_max) || !(p.s_max > p.s_min)) {
        throw Error(ErrorKind::InvalidParameter, "s_start must lie in a non-empty [s_min, s_max]");
    }
    const double m = rel.m(), n = rel.n();
    auto rhs = [m, n](double, const ode::State& y) {
        ode::State dy(3);
        dy[0] = std::cos(y[2]);
        dy[1] = std::sin(y[2]);
        dy[2] = m * std::sin(y[2]) / y[0] + n;
        return dy;
    };
    auto guard = [](double, const ode::State& y) -> std::optional<std::string> {
        if (y[0] <= kRadiusFloor) {
            return std::string("AxisCollision");
        }
        return std::nullopt;
    };
    ode::State y0(3);
    y0 << p.rho0, p.z0, p.theta0;
    ode::Result result = ode::integrate_two_sided(rhs, p.s_start, p.s_min, p.s_max, y0, generator_options(), guard);

    RotationalProfile profile;
    profile.solution = result.solution;
    profile.s_min = result.solution.t_min();
    profile.s_max = result.solution.t_max();
    profile.truncated = result.truncated;
    profile.truncation_reason = result.reason;
    if (!(profile.s_max > profile.s_min)) {
        throw Error(ErrorKind::AxisCollision, "profile reaches the axis immediately");
    }

    auto sol = std::make_shared<const ode::DenseSolution>(result.solution);
    Domain domain{profile.s_min, profile.s_max, 0.0, kTwoPi, false, true};
    auto position = [sol](double s, double v) -> Vec3 {
        const ode::State y = (*sol)(s);
        return Vec3(y[0] * std::cos(v), y[0] * std::sin(v), y[1]);
    };
    auto partials = [sol, m, n](double s, double v) {
        const ode::State y = (*sol)(s);
        const double rho = y[0], th = y[2];
        const double c = std::cos(v), sn = std::sin(v);
        const double ct = std::cos(th), st = std::sin(th);
        const double th_d = m * st / rho + n;
        Partials d;
        d.p = Vec3(rho * c, rho * sn, y[1]);
        d.xu = Vec3(ct * c, ct * sn, st);
        d.xv = Vec3(-rho * sn, rho * c, 0.0);
        d.xuu = th_d * Vec3(-st * c, -st * sn, ct);
        d.xuv = Vec3(-ct * sn, ct * c, 0.0);
        d.xvv = Vec3(-rho * c, -rho * sn, 0.0);
        return d;
    };
    return RotationalLW{std::move(profile), ParamSurface(domain, position, partials), rel};
}

ParamSurface gen_fixture(const FixtureParams& p)
{
    if (!(p.size > 0)) {
        throw Error(ErrorKind::InvalidParameter, "fixture size must be positive");
    }
    switch (p.kind) {
    case FixtureKind::Sphere: {
        const double R = p.size;
        Domain d{-std::numbers::pi / 2, std::numbers::pi / 2, 0.0, kTwoPi, false, true};
        auto pos = [R](double u, double v) -> Vec3 {
            return R * Vec3(std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u));
        };
        auto partials = [R](double u, double v) {
            const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
            Partials x;
            x.p = R * Vec3(cu * cv, cu * sv, su);
            x.xu = R * Vec3(-su * cv, -su * sv, cu);
            x.xv = R * Vec3(-cu * sv, cu * cv, 0);
            x.xuu = R * Vec3(-cu * cv, -cu * sv, -su);
            x.xuv = R * Vec3(su * sv, -su * cv, 0);
            x.xvv = R * Vec3(-cu * cv, -cu * sv, 0);
            return x;
        };
        return ParamSurface(d, pos, partials);
    }
    case FixtureKind::Cylinder: {
        if (!(p.height > 0)) {
            throw Error(ErrorKind::InvalidParameter, "cylinder height must be positive");
        }
        const double r = p.size;
        Domain d{-p.height / 2, p.height / 2, 0.0, kTwoPi, false, true};
        auto pos = [r](double u, double v) -> Vec3 { return Vec3(r * std::cos(v), r * std::sin(v), u); };
        auto partials = [r](double u, double v) {
            const double cv = std::cos(v), sv = std::sin(v);
            Partials x;
            x.p = Vec3(r * cv, r * sv, u);
            x.xu = Vec3(0, 0, 1);
            x.xv = Vec3(-r * sv, r * cv, 0);
            x.xvv = Vec3(-r * cv, -r * sv, 0);
            return x;
        };
        return ParamSurface(d, pos, partials);
    }
    case FixtureKind::Torus: {
        const double R = p.size, rho = p.tube;
        if (!(rho > 0) || !(R > rho)) {
            throw Error(ErrorKind::InvalidParameter, "torus needs R > rho > 0");
        }
        Domain d{0.0, kTwoPi, 0.0, kTwoPi, true, true};
        auto pos = [R, rho](double u, double v) -> Vec3 {
            const double w = R + rho * std::cos(u);
            return Vec3(w * std::cos(v), w * std::sin(v), rho * std::sin(u));
        };
        auto partials = [R, rho](double u, double v) {
            const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
            const double w = R + rho * cu;
            Partials x;
            x.p = Vec3(w * cv, w * sv, rho * su);
            x.xu = Vec3(-rho * su * cv, -rho * su * sv, rho * cu);
            x.xv = Vec3(-w * sv, w * cv, 0);
            x.xuu = Vec3(-rho * cu * cv, -rho * cu * sv, -rho * su);
            x.xuv = Vec3(rho * su * sv, -rho * su * cv, 0);
            x.xvv = Vec3(-w * cv, -w * sv, 0);
            return x;
        };
        return ParamSurface(d, pos, partials);
    }
    case FixtureKind::Catenoid: {
        if (!(p.height > 0)) {
            throw Error(ErrorKind::InvalidParameter, "catenoid height must be positive");
        }
        const double c = p.size;
        Domain d{-p.height / 2, p.height / 2, 0.0, kTwoPi, false, true};
        auto pos = [c](double u, double v) -> Vec3 {
            const double w = c * std::cosh(u / c);
            return Vec3(w * std::cos(v), w * std::sin(v), u);
        };
        auto partials = [c](double u, double v) {
            const double ch = std::cosh(u / c), sh = std::sinh(u / c);
            const double cv = std::cos(v), sv = std::sin(v);
            Partials x;
            x.p = Vec3(c * ch * cv, c * ch * sv, u);
            x.xu = Vec3(sh * cv, sh * sv, 1);
            x.xv = Vec3(-c * ch * sv, c * ch * cv, 0);
            x.xuu = Vec3(ch * cv / c, ch * sv / c, 0);
            x.xuv = Vec3(-sh * sv, sh * cv, 0);
            x.xvv = Vec3(-c * ch * cv, -c * ch * sv, 0);
            return x;
        };
        return ParamSurface(d, pos, partials);
    }
    }
    throw Error(ErrorKind::InvalidParameter, "unknown fixture kind");
}

std::optional<FixtureKind> parse_fixture_kind(const std::string& name)
{
    if (name == "sphere") return FixtureKind::Sphere;
    if (name == "cylinder") return FixtureKind::Cylinder;
    if (name == "torus") return FixtureKind::Torus;
    if (name == "catenoid") return FixtureKind::Catenoid;
    return std::nullopt;
}

std::string to_string(FixtureKind kind)
{
    switch (kind) {
    case FixtureKind::Sphere: return "sphere";
    case FixtureKind::Cylinder: return "cylinder";
    case FixtureKind::Torus: return "torus";
    case FixtureKind::Catenoid: return "catenoid";
    }
    return "unknown";
}

} // namespace wlab
