#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wrb/common.hpp"

namespace wrb::stochastic {

enum class LawKind { kUniform, kAffineBeta, kLogBeta, kFixed };

/// One component μ_i = T(X) of a product law, X on [0, 1].
///   Uniform(lo, hi)              μ = lo + (hi − lo) X, X uniform
///   AffineBeta(lo, hi, α, β)     μ = lo + (hi − lo) X, X ~ Beta(α, β)
///   LogBeta(a, b, α, β)          μ = 10^(a + b X),     X ~ Beta(α, β)
///   Fixed(v)                     μ ≡ v
struct ComponentLaw {
  LawKind kind = LawKind::kUniform;
  double p0 = 0.0;  // lo, a or v
  double p1 = 1.0;  // hi or b
  double alpha = 1.0;
  double beta = 1.0;

  static ComponentLaw uniform(double lo, double hi);
  static ComponentLaw affine_beta(double lo, double hi, double alpha, double beta);
  static ComponentLaw log_beta(double a, double b, double alpha, double beta);
  static ComponentLaw fixed(double value);

  void validate() const;
  [[nodiscard]] double lower() const;
  [[nodiscard]] double upper() const;
  [[nodiscard]] bool in_support(double mu) const;
  /// X = T⁻¹(μ), clamped to [0, 1].
  [[nodiscard]] double to_reference(double mu) const;
  [[nodiscard]] double from_reference(double x) const;
  /// Density of X (Beta or uniform); 1 for a fixed component.
  [[nodiscard]] double reference_density(double x) const;
  /// Density of μ per unit μ-length (Jacobian included); 1 for a fixed component.
  [[nodiscard]] double density(double mu) const;
  [[nodiscard]] double cdf(double mu) const;
  /// Inverse CDF of X evaluated at u ∈ [0, 1].
  [[nodiscard]] double reference_quantile(double u) const;
  [[nodiscard]] std::string describe() const;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng);

class ParamDistribution {
 public:
  ParamDistribution() = default;
  explicit ParamDistribution(std::vector<ComponentLaw> laws);

  [[nodiscard]] std::size_t dimension() const { return laws_.size(); }
  [[nodiscard]] const std::vector<ComponentLaw>& laws() const { return laws_; }
  [[nodiscard]] ParameterBox support() const;

  /// ρ(μ) in parameter space; 0 outside the support.
  [[nodiscard]] double pdf(const Parameter& mu) const;
  /// Density of the standardized variables X = T⁻¹(μ); 0 outside the support.
  [[nodiscard]] double reference_pdf(const Parameter& mu) const;

  /// i.i.d. draws from ρ (inverse-CDF sampling).
  [[nodiscard]] std::vector<Parameter> sample(std::size_t n, std::uint64_t seed) const;
  /// i.i.d. draws uniform in the standardized coordinates.
  [[nodiscard]] std::vector<Parameter> sample_uniform(std::size_t n, std::uint64_t seed) const;

 private:
  std::vector<ComponentLaw> laws_;
};

}  // namespace wrb::stochastic
