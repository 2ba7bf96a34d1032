#include "wlab/functions.hpp"

#include "wlab/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>

namespace wlab {

namespace {

// Step for differentiating callables; 4th-order stencils keep ~8 digits in f''.
constexpr double kCallableStep = 1e-4;

struct SplineDeleter {
    void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};

// gsl_spline_eval* take a mutable accelerator; one per call keeps evaluation reentrant.
class NaturalSpline {
public:
    NaturalSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y))
    {
        spline_.reset(gsl_spline_alloc(gsl_interp_cspline, x_.size()));
        gsl_spline_init(spline_.get(), x_.data(), y_.data(), x_.size());
    }

    double value(double t) const { return gsl_spline_eval(spline_.get(), clamp(t), nullptr); }
    double d1(double t) const { return gsl_spline_eval_deriv(spline_.get(), clamp(t), nullptr); }
    double d2(double t) const { return gsl_spline_eval_deriv2(spline_.get(), clamp(t), nullptr); }

private:
    double clamp(double t) const { return std::clamp(t, x_.front(), x_.back()); }

    std::vector<double> x_, y_;
    std::unique_ptr<gsl_spline, SplineDeleter> spline_;
};

} // namespace

SmoothFunction::SmoothFunction(Fn f, Fn df, Fn d2f, bool constant)
    : f_(std::make_shared<const Fn>(std::move(f))),
      df_(std::make_shared<const Fn>(std::move(df))),
      d2f_(std::make_shared<const Fn>(std::move(d2f))),
      constant_(constant)
{}

SmoothFunction SmoothFunction::constant(double c)
{
    return SmoothFunction([c](double) { return c; }, [](double) { return 0.0; },
                          [](double) { return 0.0; }, true);
}

SmoothFunction SmoothFunction::from_callable(Fn f)
{
    auto shared = std::make_shared<const Fn>(std::move(f));
    const double h = kCallableStep;
    Fn df = [shared, h](double x) {
        const auto& g = *shared;
        return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12 * h);
    };
    Fn d2f = [shared, h](double x) {
        const auto& g = *shared;
        return (-g(x - 2 * h) + 16 * g(x - h) - 30 * g(x) + 16 * g(x + h) - g(x + 2 * h)) / (12 * h * h);
    };
    return SmoothFunction([shared](double x) { return (*shared)(x); }, std::move(df), std::move(d2f));
}

SmoothFunction SmoothFunction::from_callable(Fn f, Fn df, Fn d2f)
{
    return SmoothFunction(std::move(f), std::move(df), std::move(d2f));
}

SmoothFunction SmoothFunction::from_samples(std::vector<double> x, std::vector<double> y)
{
    if (x.size() != y.size() || x.size() < 3) {
        throw Error(ErrorKind::InvalidParameter, "spline needs matching x/y arrays with at least 3 points");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw Error(ErrorKind::NonFiniteInput, "spline samples must be finite");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw Error(ErrorKind::InvalidParameter, "spline abscissae must be strictly increasing");
        }
    }
    auto spline = std::make_shared<const NaturalSpline>(std::move(x), std::move(y));
    return SmoothFunction([spline](double t) { return spline->value(t); },
                          [spline](double t) { return spline->d1(t); },
                          [spline](double t) { return spline->d2(t); });
}

} // namespace wlab
