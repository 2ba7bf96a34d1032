#pragma once

// Independent reference computations shared by the tests.

#include "wlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

using wlab::Vec3;

inline double rel_err(double a, double b, double floor = 1.0)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

// Classical second-fundamental-form formulas, no determinants.
struct Classical {
    double H, K, k1, k2;
};

inline Classical classical_curvature(const Vec3& xu, const Vec3& xv, const Vec3& xuu, const Vec3& xuv,
                                     const Vec3& xvv)
{
    const Vec3 N = xu.cross(xv).normalized();
    const double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
    const double e = N.dot(xuu), f = N.dot(xuv), g = N.dot(xvv);
    const double W = E * G - F * F;
    Classical c;
    c.H = (e * G - 2 * f * F + g * E) / (2 * W);
    c.K = (e * g - f * f) / W;
    const double d = std::sqrt(std::max(c.H * c.H - c.K, 0.0));
    c.k1 = c.H + d;
    c.k2 = c.H - d;
    return c;
}

inline Vec3 random_vec(std::mt19937_64& rng, double lo = -1, double hi = 1)
{
    std::uniform_real_distribution<double> U(lo, hi);
    return Vec3(U(rng), U(rng), U(rng));
}

// Jet whose principal curvatures are exactly (k_a, k_b) with respect to
// N = Xu x Xv / |Xu x Xv|, in a random tangent plane with random tangent parts.
inline wlab::Partials jet_with_curvatures(std::mt19937_64& rng, double k_a, double k_b)
{
    Vec3 e1 = random_vec(rng).normalized();
    Vec3 e2 = random_vec(rng);
    e2 = (e2 - e2.dot(e1) * e1).normalized();
    const Vec3 N = e1.cross(e2);
    std::uniform_real_distribution<double> U(-1, 1), P(0.5, 1.5);
    // Xu, Xv in the (e1, e2) plane with positive orientation.
    double a11 = P(rng), a12 = U(rng), a21 = U(rng) * 0.3, a22 = P(rng);
    if (a11 * a22 - a12 * a21 < 0.1) {
        a12 = 0;
        a21 = 0;
    }
    wlab::Partials d;
    d.p = random_vec(rng);
    d.xu = a11 * e1 + a21 * e2;
    d.xv = a12 * e1 + a22 * e2;
    // II(x, y) = k_a x1 y1 + k_b x2 y2 in the orthonormal basis.
    auto II = [&](double x1, double x2, double y1, double y2) { return k_a * x1 * y1 + k_b * x2 * y2; };
    const double e = II(a11, a21, a11, a21), f = II(a11, a21, a12, a22), g = II(a12, a22, a12, a22);
    d.xuu = e * N + U(rng) * e1 + U(rng) * e2;
    d.xuv = f * N + U(rng) * e1 + U(rng) * e2;
    d.xvv = g * N + U(rng) * e1 + U(rng) * e2;
    return d;
}

} // namespace oracle
