#pragma once

// Generic (non-special) surfaces used across the tests.

#include "wlab/cyclic.hpp"

#include <cmath>

namespace fixture {

using namespace wlab;

// A cyclic fixture with every function non-constant.
struct GenericCyclic {
    FrenetCurve curve;
    CyclicFoliationData data;
};

inline GenericCyclic generic_cyclic()
{
    GenericCyclic g;
    g.curve.curvature = SmoothFunction::from_callable([](double u) { return 0.8 + 0.3 * std::sin(u); },
                                                      [](double u) { return 0.3 * std::cos(u); },
                                                      [](double u) { return -0.3 * std::sin(u); });
    g.curve.torsion = SmoothFunction::from_callable([](double u) { return 0.4 * std::cos(2 * u); },
                                                    [](double u) { return -0.8 * std::sin(2 * u); },
                                                    [](double u) { return -1.6 * std::cos(2 * u); });
    g.curve.u0 = 0;
    g.curve.u1 = 2;
    g.data.alpha = SmoothFunction::from_callable([](double u) { return 1 + 0.2 * u; }, [](double) { return 0.2; },
                                                 [](double) { return 0.0; });
    g.data.beta = SmoothFunction::from_callable([](double u) { return 0.3 * std::sin(u); },
                                                [](double u) { return 0.3 * std::cos(u); },
                                                [](double u) { return -0.3 * std::sin(u); });
    g.data.gamma = SmoothFunction::from_callable([](double u) { return -0.2 + 0.1 * u * u; },
                                                 [](double u) { return 0.2 * u; }, [](double) { return 0.2; });
    g.data.radius = SmoothFunction::from_callable([](double u) { return 0.5 + 0.1 * std::cos(u); },
                                                  [](double u) { return -0.1 * std::sin(u); },
                                                  [](double u) { return -0.1 * std::cos(u); });
    return g;
}

// a, b, r all non-constant; not linear Weingarten for any relation.
inline RiemannTypeSurface generic_riemann_type()
{
    RiemannTypeSurface s;
    s.a = SmoothFunction::from_callable([](double u) { return std::sin(u) + 0.2 * u * u; },
                                        [](double u) { return std::cos(u) + 0.4 * u; },
                                        [](double u) { return -std::sin(u) + 0.4; });
    s.b = SmoothFunction::from_callable([](double u) { return 0.5 * std::cos(1.3 * u); },
                                        [](double u) { return -0.65 * std::sin(1.3 * u); },
                                        [](double u) { return -0.845 * std::cos(1.3 * u); });
    s.r = SmoothFunction::from_callable([](double u) { return 1.1 + 0.3 * std::sin(2 * u); },
                                        [](double u) { return 0.6 * std::cos(2 * u); },
                                        [](double u) { return -1.2 * std::sin(2 * u); });
    return s;
}

// The classification fixture: a = sin u, b = 0, r = 1.
inline RiemannTypeSurface sine_riemann_type()
{
    RiemannTypeSurface s;
    s.a = SmoothFunction::from_callable([](double u) { return std::sin(u); },
                                        [](double u) { return std::cos(u); },
                                        [](double u) { return -std::sin(u); });
    return s;
}

} // namespace fixture
