#include "wrb/fem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrb/common.hpp"

namespace wrb::fem {

double Mesh::signed_area(int k) const {
  const auto& t = triangles[k];
  const Point& a = nodes[t[0]];
  const Point& b = nodes[t[1]];
  const Point& c = nodes[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point Mesh::centroid(int k) const {
  const auto& t = triangles[k];
  return {(nodes[t[0]].x + nodes[t[1]].x + nodes[t[2]].x) / 3.0,
          (nodes[t[0]].y + nodes[t[1]].y + nodes[t[2]].y) / 3.0};
}

bool Mesh::has_subdomain(int tag) const {
  if (tag == kAllSubdomains) return true;
  return std::find(subdomain_tags.begin(), subdomain_tags.end(), tag) != subdomain_tags.end();
}

bool Mesh::has_boundary_tag(int tag) const {
  return std::any_of(boundary_edges.begin(), boundary_edges.end(),
                     [tag](const BoundaryEdge& e) { return e.tag == tag; });
}

std::vector<int> Mesh::boundary_nodes(int tag) const {
  std::vector<int> out;
  for (const auto& e : boundary_edges) {
    if (e.tag != tag) continue;
    out.push_back(e.nodes[0]);
    out.push_back(e.nodes[1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundaryTagger side_tagger(const Rectangle& rect) {
  const double tol = 1e-12 * std::max(rect.x1 - rect.x0, rect.y1 - rect.y0);
  return [rect, tol](const Point& m) {
    if (std::abs(m.y - rect.y0) <= tol) return 1;
    if (std::abs(m.x - rect.x1) <= tol) return 2;
    if (std::abs(m.y - rect.y1) <= tol) return 3;
    return 4;
  };
}

Mesh build_structured_mesh(const Rectangle& rect, int nx, int ny, std::optional<double> subdomain_split,
                           BoundaryTagger tagger) {
  if (nx < 1 || ny < 1) throw InvalidArgument("build_structured_mesh: nx and ny must be >= 1");
  if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
    throw InvalidArgument("build_structured_mesh: rectangle has nonpositive extent");
  }
  const double hx = (rect.x1 - rect.x0) / nx;
  const double hy = (rect.y1 - rect.y0) / ny;

  int split_column = nx;  // cells with index < split_column are in subdomain 1
  if (subdomain_split) {
    const double s = *subdomain_split;
    if (!(s > rect.x0 && s < rect.x1)) {
      throw InvalidArgument("build_structured_mesh: split x=" + std::to_string(s) +
                            " is not strictly inside the rectangle");
    }
    const double cells = (s - rect.x0) / hx;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9) {
      throw InvalidArgument("build_structured_mesh: split x=" + std::to_string(s) +
                            " does not coincide with a grid line (hx=" + std::to_string(hx) + ")");
    }
    split_column = static_cast<int>(rounded);
  }
  if (!tagger) tagger = side_tagger(rect);

  Mesh mesh;
  mesh.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      // Snap the last row/column to the exact rectangle bounds.
      const double x = (i == nx) ? rect.x1 : rect.x0 + i * hx;
      const double y = (j == ny) ? rect.y1 : rect.y0 + j * hy;
      mesh.nodes.push_back({x, y});
    }
  }
  const auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  const double diag = std::hypot(hx, hy);

  mesh.triangles.reserve(2 * static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int n00 = id(i, j), n10 = id(i + 1, j), n01 = id(i, j + 1), n11 = id(i + 1, j + 1);
      const int sub = (i < split_column) ? 1 : 2;
      mesh.triangles.push_back({n00, n10, n11});
      mesh.triangles.push_back({n00, n11, n01});
      mesh.subdomain_tags.push_back(sub);
      mesh.subdomain_tags.push_back(sub);
      mesh.diameters.push_back(diag);
      mesh.diameters.push_back(diag);
    }
  }

  const auto add_edge = [&](int a, int b) {
    const Point m{0.5 * (mesh.nodes[a].x + mesh.nodes[b].x), 0.5 * (mesh.nodes[a].y + mesh.nodes[b].y)};
    mesh.boundary_edges.push_back({{a, b}, tagger(m)});
  };
  for (int i = 0; i < nx; ++i) add_edge(id(i, 0), id(i + 1, 0));
  for (int j = 0; j < ny; ++j) add_edge(id(nx, j), id(nx, j + 1));
  for (int i = nx; i > 0; --i) add_edge(id(i, ny), id(i - 1, ny));
  for (int j = ny; j > 0; --j) add_edge(id(0, j), id(0, j - 1));
  return mesh;
}

}  // namespace wrb::fem
