#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latpack/polytope.hpp"

namespace latpack {

struct OffMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
};

/// ASCII OFF: "OFF" header, "nv nf ne" counts, vertex lines, "k i1 .. ik" face lines.
OffMesh read_off(std::istream& in);
OffMesh read_off_file(const std::string& path);
void write_off(std::ostream& out, const OffMesh& mesh);
void write_off_file(const std::string& path, const OffMesh& mesh);

/// One halfspace "a1 a2 a3 b" (a·x ≤ b) per line; '#' starts a comment.
std::vector<Halfspace> read_hrep(std::istream& in);
std::vector<Halfspace> read_hrep_file(const std::string& path);
void write_hrep(std::ostream& out, const std::vector<Halfspace>& hs);

OffMesh to_mesh(const Polytope& p);

/// ".off" files are read as point sets, anything else as H-rep text.
Polytope load_polytope(const std::string& path);

}  // namespace latpack
