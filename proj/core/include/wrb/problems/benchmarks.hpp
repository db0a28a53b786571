#pragma once

#include <functional>

#include "wrb/problems/problem.hpp"

namespace wrb::problems {

/// Boundary tags of the channel problem on Ω = (0,2)×(0,1).
namespace graetz_tags {
inline constexpr int kInlet = 1;         // x = 0
inline constexpr int kBottomLeft = 2;    // y = 0, x < 1
inline constexpr int kBottomRight = 3;   // y = 0, x > 1
inline constexpr int kOutlet = 4;        // x = 2 (natural)
inline constexpr int kTopRight = 5;      // y = 1, x > 1
inline constexpr int kTopLeft = 6;       // y = 1, x < 1
}  // namespace graetz_tags

/// Boundary tags of the front problem on the unit square.
namespace square_tags {
inline constexpr int kLeft = 1;
inline constexpr int kBottomLeft = 2;   // y = 0, x < 1/4
inline constexpr int kBottomRight = 3;  // y = 0, x > 1/4
inline constexpr int kRight = 4;
inline constexpr int kTop = 5;
}  // namespace square_tags

struct GraetzOptions {
  int nx = 92;
  int ny = 46;
  ParameterBox domain{{1.0, 0.5}, {1e6, 4.0}};
  bool transient = false;
  double final_time = 7.0;
  int steps = 50;
  std::function<double(double)> control{};  // empty: g ≡ 1
  fem::ScalarField initial{};               // empty: u0 ≡ 1
};

struct FrontSquareOptions {
  int nx = 124;
  int ny = 124;
  double delta = 1.0;
  /// Multiply the streamline term by h_K (classical SUPG scaling).
  bool scale_by_diameter = false;
  ParameterBox domain{{1.0, 0.0}, {1e6, 1.57}};
  bool transient = false;
  double final_time = 1.28;
  int steps = 40;
  std::function<double(double)> control{};  // empty: g(t) = cos t
  fem::ScalarField initial{};               // empty: u0 ≡ 0
};

/// Channel flow with Poiseuille profile β = (4y(1−y), 0); μ = (Péclet, length of
/// the heated section). The heated section x ∈ (1,2) is a reference copy of
/// (1, 1+μ2) stretched in x.
TruthProblem build_graetz(const GraetzOptions& options = {});

/// Rotating-front problem; μ = (Péclet, advection angle).
TruthProblem build_front_square(const FrontSquareOptions& options = {});

/// Poiseuille profile used by the channel problem.
fem::Point graetz_velocity(const fem::Point& x);

}  // namespace wrb::problems
