#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace wlab {

/// A smooth scalar function of one variable with first and second derivatives.
/// Built from closed forms, from a callable (derivatives by finite differences),
/// or from samples via a natural cubic spline.
class SmoothFunction {
public:
    using Fn = std::function<double(double)>;

    static SmoothFunction constant(double c);
    static SmoothFunction from_callable(Fn f);
    static SmoothFunction from_callable(Fn f, Fn df, Fn d2f);
    /// Natural cubic spline through (x[i], y[i]); x strictly increasing, at least 3 points.
    static SmoothFunction from_samples(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const { return (*f_)(x); }
    double d1(double x) const { return (*df_)(x); }
    double d2(double x) const { return (*d2f_)(x); }

    /// True when built by constant().
    bool is_constant() const { return constant_; }

private:
    SmoothFunction(Fn f, Fn df, Fn d2f, bool constant = false);

    std::shared_ptr<const Fn> f_, df_, d2f_;
    bool constant_ = false;
};

} // namespace wlab
