#pragma once

// Adaptive Dormand-Prince 5(4) integration with the 4th-order continuous
// extension kept for every accepted step, so the whole trajectory can be
// evaluated afterwards.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wlab::ode {

using State = Eigen::VectorXd;
using Rhs = std::function<State(double, const State&)>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 0;     // 0: chosen from the initial derivative
    double max_step = 0;         // 0: unbounded
    long max_steps = 2'000'000;
    double blowup = 1e12;        // any |y_i| beyond this truncates the run
};

/// Returns a reason string when the state must not be continued past.
using Guard = std::function<std::optional<std::string>(double, const State&)>;
/// May modify an accepted state in place (e.g. re-orthonormalization).
using Projection = std::function<void(double, State&)>;

/// Continuous extension of one accepted step from t0 to t0 + h (h may be negative).
struct Segment {
    double t0, h;
    State r1, r2, r3, r4, r5;

    double lo() const { return h > 0 ? t0 : t0 + h; }
    double hi() const { return h > 0 ? t0 + h : t0; }
    State value(double t) const;
    State derivative(double t) const;
};

class DenseSolution {
public:
    DenseSolution() = default;
    DenseSolution(double t_start, State y_start);

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    std::size_t dimension() const { return static_cast<std::size_t>(y_start_.size()); }

    /// Throws OutOfDomain outside [t_min, t_max].
    State operator()(double t) const;
    State derivative(double t) const;

    /// Merges a trajectory integrated backwards from the same start point.
    void prepend_backward(const DenseSolution& backward);
    void append(Segment seg);

    const std::vector<Segment>& segments() const { return segments_; }

private:
    const Segment& locate(double t) const;

    double t_start_ = 0;
    State y_start_;
    double t_min_ = 0, t_max_ = 0;
    std::vector<Segment> segments_; // sorted by lo()
};

struct Result {
    DenseSolution solution;
    bool truncated = false;
    std::string reason; // set when truncated
    long steps = 0;
};

/// Integrates y' = f(t, y) from t0 to t1 (either direction). Stops early, keeping
/// the accepted part, when the guard fires, the state blows up, or the step size
/// underflows.
Result integrate(const Rhs& f, double t0, double t1, const State& y0, const Options& options = {},
                 const Guard& guard = {}, const Projection& project = {});

/// Integrates from t0 towards both ends of [t_lo, t_hi] and merges the pieces.
/// The truncation flag is set when either side stopped early.
Result integrate_two_sided(const Rhs& f, double t0, double t_lo, double t_hi, const State& y0,
                           const Options& options = {}, const Guard& guard = {},
                           const Projection& project = {});

} // namespace wlab::ode
