#pragma once

// OBJ and CSV export. Every file is written to a temporary sibling and renamed.

#include "wlab/surface.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wlab {

/// Vertices on an nu x nv grid. Open directions include both ends; periodic
/// directions stop one step short and wrap, so the seam is welded.
struct GridMesh {
    int nu = 0, nv = 0;
    bool wrap_u = false, wrap_v = false;
    std::vector<Vec3> vertices; // index i * nv + j
    std::vector<Vec3> normals;  // empty when not requested
    std::vector<std::array<int, 3>> faces; // 0-based
};

GridMesh mesh_surface(const ParamSurface& surface, int nu, int nv, bool with_normals = true);

/// "v x y z" with 9 significant digits, optional "vn", "f a//a b//b c//c" 1-based.
void write_obj(std::ostream& out, const GridMesh& mesh);

struct ObjStats {
    int vertices = 0, normals = 0, faces = 0;
    bool indices_valid = true;
};

/// Counts records and checks that every face index refers to an existing vertex.
ObjStats inspect_obj(std::istream& in);

/// Per-point H, K, k1, k2 and, with a relation, the residuals.
void write_analysis_csv(std::ostream& out, const ParamSurface& surface, int nu, int nv,
                        const std::optional<LWRelation>& relation);

/// Writes via "<path>.tmp" and rename. Throws Error(Io).
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace wlab
