#include "latpack/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "latpack/error.hpp"

namespace latpack {

namespace {

// Next line that is neither empty nor a '#' comment, with comments stripped.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace

OffMesh read_off(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("OFF: empty input");
  std::istringstream head(line);
  std::string magic;
  head >> magic;
  if (magic != "OFF") throw ParseError("OFF: missing header");
  long nv = -1, nf = -1, ne = 0;
  if (!(head >> nv)) {
    if (!next_content_line(in, line)) throw ParseError("OFF: missing counts");
    std::istringstream counts(line);
    counts >> nv >> nf >> ne;
  } else {
    head >> nf >> ne;
  }
  if (nv < 0 || nf < 0) throw ParseError("OFF: bad counts line");
  OffMesh m;
  for (long i = 0; i < nv; ++i) {
    if (!next_content_line(in, line)) throw ParseError("OFF: truncated vertex list");
    std::istringstream s(line);
    Vec3 v;
    if (!(s >> v.x >> v.y >> v.z)) throw ParseError("OFF: bad vertex line " + std::to_string(i));
    m.vertices.push_back(v);
  }
  for (long i = 0; i < nf; ++i) {
    if (!next_content_line(in, line)) throw ParseError("OFF: truncated face list");
    std::istringstream s(line);
    int k = 0;
    if (!(s >> k) || k < 0) throw ParseError("OFF: bad face line " + std::to_string(i));
    std::vector<int> face(static_cast<std::size_t>(k));
    for (int& idx : face)
      if (!(s >> idx) || idx < 0 || idx >= nv) throw ParseError("OFF: bad face index in face " + std::to_string(i));
    m.faces.push_back(std::move(face));
  }
  return m;
}

OffMesh read_off_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_off(in);
}

void write_off(std::ostream& out, const OffMesh& mesh) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& f : mesh.faces) {
    out << f.size();
    for (int i : f) out << ' ' << i;
    out << '\n';
  }
}

void write_off_file(const std::string& path, const OffMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_off(out, mesh);
}

std::vector<Halfspace> read_hrep(std::istream& in) {
  std::vector<Halfspace> hs;
  std::string line;
  int lineno = 0;
  while (next_content_line(in, line)) {
    ++lineno;
    std::istringstream s(line);
    Halfspace h;
    std::string extra;
    if (!(s >> h.normal.x >> h.normal.y >> h.normal.z >> h.offset) || (s >> extra))
      throw ParseError("H-rep: expected 'a1 a2 a3 b' on content line " + std::to_string(lineno));
    hs.push_back(h);
  }
  if (hs.empty()) throw ParseError("H-rep: no halfspaces");
  return hs;
}

std::vector<Halfspace> read_hrep_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_hrep(in);
}

void write_hrep(std::ostream& out, const std::vector<Halfspace>& hs) {
  out << std::setprecision(17);
  for (const Halfspace& h : hs) out << h.normal.x << ' ' << h.normal.y << ' ' << h.normal.z << ' ' << h.offset << '\n';
}

OffMesh to_mesh(const Polytope& p) {
  OffMesh m;
  m.vertices = p.vertices;
  for (const Facet& f : p.facets) m.faces.push_back(f.vertices);
  return m;
}

Polytope load_polytope(const std::string& path) {
  const bool off = path.size() >= 4 && (path.compare(path.size() - 4, 4, ".off") == 0 || path.compare(path.size() - 4, 4, ".OFF") == 0);
  if (off) return convex_hull(read_off_file(path).vertices);
  return from_halfspaces(read_hrep_file(path));
}

}  // namespace latpack
