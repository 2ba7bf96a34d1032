#include "wlab/ode.hpp"

#include "wlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wlab::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

bool finite_and_bounded(const State& y, double bound)
{
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]) || std::abs(y[i]) > bound) {
            return false;
        }
    }
    return true;
}

double error_norm(const State& err, const State& y0, const State& y1, const Options& opt)
{
    double sum = 0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / sc;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(const Rhs& f, double t0, const State& y0, const State& k1, double direction,
                    const Options& opt)
{
    // Hairer's heuristic for the starting step.
    State sc = (opt.atol + opt.rtol * y0.array().abs()).matrix();
    const double dnf = (k1.array() / sc.array()).matrix().squaredNorm() / static_cast<double>(y0.size());
    const double dny = (y0.array() / sc.array()).matrix().squaredNorm() / static_cast<double>(y0.size());
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    if (opt.max_step > 0) {
        h = std::min(h, opt.max_step);
    }
    const State y1 = y0 + direction * h * k1;
    const State k2 = f(t0 + direction * h, y1);
    const double der2 =
        std::sqrt(((k2 - k1).array() / sc.array()).matrix().squaredNorm() / static_cast<double>(y0.size())) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min(100 * std::abs(h), h1);
    if (opt.max_step > 0) {
        h = std::min(h, opt.max_step);
    }
    return h;
}

} // namespace

State Segment::value(double t) const
{
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
}

State Segment::derivative(double t) const
{
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    const State q = r4 + th1 * r5;
    const State dq = -r5;
    const State p = r3 + th * q;
    const State dp = q + th * dq;
    const State s = r2 + th1 * p;
    const State ds = -p + th1 * dp;
    return (s + th * ds) / h;
}

DenseSolution::DenseSolution(double t_start, State y_start)
    : t_start_(t_start), y_start_(std::move(y_start)), t_min_(t_start), t_max_(t_start)
{}

void DenseSolution::append(Segment seg)
{
    t_min_ = std::min(t_min_, seg.lo());
    t_max_ = std::max(t_max_, seg.hi());
    // Backward runs produce segments in decreasing order.
    if (!segments_.empty() && seg.lo() < segments_.front().lo()) {
        segments_.insert(segments_.begin(), std::move(seg));
    } else {
        segments_.push_back(std::move(seg));
    }
}

void DenseSolution::prepend_backward(const DenseSolution& backward)
{
    std::vector<Segment> merged = backward.segments_;
    merged.insert(merged.end(), segments_.begin(), segments_.end());
    segments_ = std::move(merged);
    t_min_ = std::min(t_min_, backward.t_min_);
    t_max_ = std::max(t_max_, backward.t_max_);
}

const Segment& DenseSolution::locate(double t) const
{
    if (segments_.empty() || !(t >= t_min_ && t <= t_max_)) {
        std::ostringstream msg;
        msg << "t = " << t << " outside integrated range [" << t_min_ << ", " << t_max_ << "]";
        throw Error(ErrorKind::OutOfDomain, msg.str());
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const Segment& s) { return x < s.lo(); });
    if (it != segments_.begin()) {
        --it;
    }
    return *it;
}

State DenseSolution::operator()(double t) const
{
    if (segments_.empty() && t == t_start_) {
        return y_start_;
    }
    return locate(t).value(t);
}

State DenseSolution::derivative(double t) const
{
    return locate(t).derivative(t);
}

Result integrate(const Rhs& f, double t0, double t1, const State& y0, const Options& opt,
                 const Guard& guard, const Projection& project)
{
    Result result;
    result.solution = DenseSolution(t0, y0);
    if (t1 == t0) {
        return result;
    }
    const double direction = t1 > t0 ? 1.0 : -1.0;

    double t = t0;
    State y = y0;
    State k1 = f(t, y);
    if (!finite_and_bounded(k1, std::numeric_limits<double>::max())) {
        result.truncated = true;
        result.reason = "NonFinite: derivative at the initial point";
        return result;
    }
    double h = opt.initial_step > 0 ? opt.initial_step : initial_step(f, t0, y, k1, direction, opt);
    bool last_rejected = false;

    while (direction * (t1 - t) > 0) {
        if (result.steps >= opt.max_steps) {
            result.truncated = true;
            result.reason = "step budget exhausted";
            break;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            result.truncated = true;
            if (result.reason.empty()) {
                result.reason = "step size underflow";
            }
            break;
        }
        if (opt.max_step > 0) {
            h = std::min(h, opt.max_step);
        }
        const double remaining = std::abs(t1 - t);
        if (h >= remaining) {
            h = remaining;
        }
        const double hs = direction * h;

        const State k2 = f(t + c2 * hs, y + hs * a21 * k1);
        const State k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        const State k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double t_new = (h == remaining) ? t1 : t + hs;

        bool valid = finite_and_bounded(y1, opt.blowup);
        std::string why = valid ? std::string{} : std::string("NonFinite: state blew up");
        State k7;
        double err = std::numeric_limits<double>::infinity();
        if (valid) {
            k7 = f(t_new, y1);
            valid = finite_and_bounded(k7, std::numeric_limits<double>::max());
            if (!valid) {
                why = "NonFinite: derivative blew up";
            }
        }
        if (valid && guard) {
            if (auto reason = guard(t_new, y1)) {
                valid = false;
                why = *reason;
            }
        }
        if (!valid) {
            // Approach the boundary of validity by halving.
            result.reason = why;
            h *= 0.5;
            last_rejected = true;
            continue;
        }

        const State errv = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        err = error_norm(errv, y, y1, opt);

        if (err <= 1.0) {
            Segment seg;
            seg.t0 = t;
            seg.h = t_new - t;
            seg.r1 = y;
            seg.r2 = y1 - y;
            seg.r3 = seg.h * k1 - seg.r2;
            seg.r4 = seg.r2 - seg.h * k7 - seg.r3;
            seg.r5 = seg.h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            result.solution.append(std::move(seg));
            ++result.steps;

            t = t_new;
            y = y1;
            k1 = k7;
            if (project) {
                const State before = y;
                project(t, y);
                if (y != before) {
                    k1 = f(t, y);
                }
            }
            result.reason.clear();
            double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 10.0;
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
            h *= fac;
            last_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
        }
    }
    if (!result.truncated && direction * (t1 - t) > 0) {
        result.truncated = true;
    }
    return result;
}

Result integrate_two_sided(const Rhs& f, double t0, double t_lo, double t_hi, const State& y0,
                           const Options& options, const Guard& guard, const Projection& project)
{
    if (!(t_lo <= t0 && t0 <= t_hi)) {
        throw Error(ErrorKind::InvalidParameter, "start point must lie inside the integration range");
    }
    Result forward = integrate(f, t0, t_hi, y0, options, guard, project);
    Result backward = integrate(f, t0, t_lo, y0, options, guard, project);
    forward.solution.prepend_backward(backward.solution);
    forward.steps += backward.steps;
    if (backward.truncated) {
        forward.truncated = true;
        forward.reason = forward.reason.empty() ? backward.reason : forward.reason + "; " + backward.reason;
    }
    return forward;
}

} // namespace wlab::ode
