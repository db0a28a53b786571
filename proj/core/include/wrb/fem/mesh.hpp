#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace wrb::fem {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle (x0, x1) × (y0, y1).
struct Rectangle {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
};

struct BoundaryEdge {
  std::array<int, 2> nodes{};
  int tag = 0;
};

/// Tag value for "every subdomain" in term descriptors.
inline constexpr int kAllSubdomains = 0;

/// P1 triangulation. Triangles are counter-clockwise; `diameters[k]` is the
/// longest edge of triangle k.
struct Mesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> subdomain_tags;
  std::vector<double> diameters;

  [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes.size()); }
  [[nodiscard]] int num_triangles() const { return static_cast<int>(triangles.size()); }
  [[nodiscard]] double signed_area(int k) const;
  [[nodiscard]] Point centroid(int k) const;
  [[nodiscard]] bool has_subdomain(int tag) const;
  [[nodiscard]] bool has_boundary_tag(int tag) const;
  /// Sorted, unique nodes touched by edges carrying `tag`.
  [[nodiscard]] std::vector<int> boundary_nodes(int tag) const;
};

/// Maps a boundary edge midpoint to a tag.
using BoundaryTagger = std::function<int(const Point& midpoint)>;

/// Side tags used when no tagger is supplied: bottom 1, right 2, top 3, left 4.
BoundaryTagger side_tagger(const Rectangle& rect);

/// Right-diagonal structured triangulation with 2·nx·ny triangles. With a
/// split, triangles left of x = split get subdomain 1, the others 2;
/// otherwise all carry 1.
Mesh build_structured_mesh(const Rectangle& rect, int nx, int ny,
                           std::optional<double> subdomain_split = std::nullopt,
                           BoundaryTagger tagger = {});

}  // namespace wrb::fem
