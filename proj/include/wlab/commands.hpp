#pragma once

#include "wlab/harmonics.hpp"
#include "wlab/scene.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wlab {

/// Exit codes of the command line front end.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

struct CommandOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<GridSpec> grid;
    double tol = 1e-6;
    // harmonics
    std::vector<double> u_list; // empty: five interior points
    int J = 12;
    int samples = kDefaultHarmonicSamples;
    // generate / export
    bool normals = true;
};

/// The config with command-line overrides applied.
SceneConfig effective_scene(const CommandOptions& options);

std::string output_path(const SceneConfig& config, const std::string& suffix);

/// Each returns the list of written files; human-readable summaries go to `log`.
std::vector<std::string> cmd_generate(const CommandOptions& options, std::ostream& log);
std::vector<std::string> cmd_analyze(const CommandOptions& options, std::ostream& log);
std::vector<std::string> cmd_harmonics(const CommandOptions& options, std::ostream& log);
std::vector<std::string> cmd_fit(const CommandOptions& options, std::ostream& log);
std::vector<std::string> cmd_export(const CommandOptions& options, std::ostream& log);

/// Reads the config recorded in a metadata file written by cmd_generate.
SceneConfig scene_from_metadata(const std::string& text);

/// Full command line (argv[0] included). Errors are printed to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wlab
