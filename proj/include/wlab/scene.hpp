#pragma once

// Scene configuration: a JSON document naming a surface and how to sample and
// export it.
//
//   {
//     "surface":  {"kind": "riemann-example", "lambda": 1, "mu": 0},
//     "grid":     {"nu": 40, "nv": 40},
//     "relation": {"m": -1, "n": 0},
//     "output":   {"dir": "out", "name": "scene"}
//   }
//
// Scalar functions (cyclic and riemann-type kinds) are either a number or an
// object: {"type": "poly", "coeffs": [c0, c1, ...]},
// {"type": "sin" | "cos", "amplitude", "frequency", "phase", "offset"},
// {"type": "cosh", "amplitude", "scale", "offset"} or
// {"type": "samples", "x": [...], "y": [...]}.

#include "wlab/cyclic.hpp"
#include "wlab/fitting.hpp"
#include "wlab/generators.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wlab {

enum class SurfaceKind { Fixture, Cyclic, RiemannType, RiemannExample, RotationalLW };

std::string to_string(SurfaceKind kind);

struct GridSpec {
    int nu = 40, nv = 40;
};

struct OutputSpec {
    std::string dir = ".";
    std::string name = "scene";
};

struct SceneConfig {
    SurfaceKind kind = SurfaceKind::Fixture;
    nlohmann::json surface; // normalized: defaults filled in, "kind" included
    GridSpec grid;
    std::optional<LWRelation> relation;
    OutputSpec output;
};

/// Parses and validates. Syntax errors report line and column, schema errors the
/// offending field; both throw Error(Config).
SceneConfig parse_scene(const std::string& text);
SceneConfig load_scene(const std::string& path);
SceneConfig scene_from_json(const nlohmann::json& j);

nlohmann::json scene_to_json(const SceneConfig& config);
/// Sorted keys, two-space indent, trailing newline. Equal configs give equal bytes.
std::string canonical_text(const SceneConfig& config);

/// Parses "NUxNV".
GridSpec parse_grid(const std::string& text);

SmoothFunction function_from_json(const nlohmann::json& spec, const std::string& field);

/// The surface a config describes, with whatever the generator reports alongside.
struct BuiltScene {
    ParamSurface surface;
    std::optional<RiemannTypeSurface> riemann_type;
    std::optional<CyclicSurface> cyclic;
    nlohmann::json info; // truncation flags, integrated ranges
};

BuiltScene build_scene(const SceneConfig& config);

} // namespace wlab
