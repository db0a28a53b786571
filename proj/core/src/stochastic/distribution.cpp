#include "wrb/stochastic/distribution.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <sstream>

namespace wrb::stochastic {

namespace {
constexpr double kLn10 = 2.302585092994045684;
}

ComponentLaw ComponentLaw::uniform(double lo, double hi) { return {LawKind::kUniform, lo, hi, 1.0, 1.0}; }
ComponentLaw ComponentLaw::affine_beta(double lo, double hi, double a, double b) {
  return {LawKind::kAffineBeta, lo, hi, a, b};
}
ComponentLaw ComponentLaw::log_beta(double a, double b, double al, double be) { return {LawKind::kLogBeta, a, b, al, be}; }
ComponentLaw ComponentLaw::fixed(double value) { return {LawKind::kFixed, value, value, 1.0, 1.0}; }

void ComponentLaw::validate() const {
  if (!std::isfinite(p0) || !std::isfinite(p1)) throw InvalidArgument("distribution: law parameters must be finite");
  switch (kind) {
    case LawKind::kUniform:
    case LawKind::kAffineBeta:
      if (!(p1 > p0)) throw InvalidArgument("distribution: upper bound must exceed lower bound");
      break;
    case LawKind::kLogBeta:
      if (!(p1 > 0.0)) throw InvalidArgument("distribution: log-Beta exponent span must be positive");
      break;
    case LawKind::kFixed:
      break;
  }
  if ((kind == LawKind::kAffineBeta || kind == LawKind::kLogBeta) && !(alpha > 0.0 && beta > 0.0)) {
    throw InvalidArgument("distribution: Beta shape parameters must be positive");
  }
}

double ComponentLaw::lower() const { return kind == LawKind::kLogBeta ? std::pow(10.0, p0) : p0; }
double ComponentLaw::upper() const {
  switch (kind) {
    case LawKind::kLogBeta:
      return std::pow(10.0, p0 + p1);
    case LawKind::kFixed:
      return p0;
    default:
      return p1;
  }
}

bool ComponentLaw::in_support(double mu) const {
  const double lo = lower(), hi = upper();
  const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return mu >= lo - slack && mu <= hi + slack;
}

double ComponentLaw::to_reference(double mu) const {
  double x = 0.0;
  switch (kind) {
    case LawKind::kUniform:
    case LawKind::kAffineBeta:
      x = (mu - p0) / (p1 - p0);
      break;
    case LawKind::kLogBeta:
      x = (std::log10(mu) - p0) / p1;
      break;
    case LawKind::kFixed:
      return 0.0;
  }
  return std::clamp(x, 0.0, 1.0);
}

double ComponentLaw::from_reference(double x) const {
  switch (kind) {
    case LawKind::kUniform:
    case LawKind::kAffineBeta:
      return p0 + (p1 - p0) * x;
    case LawKind::kLogBeta:
      return std::pow(10.0, p0 + p1 * x);
    case LawKind::kFixed:
      return p0;
  }
  return p0;
}

double ComponentLaw::reference_density(double x) const {
  if (kind == LawKind::kFixed) return 1.0;
  if (x < 0.0 || x > 1.0) return 0.0;
  if (kind == LawKind::kUniform) return 1.0;
  return boost::math::ibeta_derivative(alpha, beta, x);
}

double ComponentLaw::density(double mu) const {
  if (kind == LawKind::kFixed) return 1.0;
  if (!in_support(mu)) return 0.0;
  const double x = to_reference(mu);
  switch (kind) {
    case LawKind::kUniform:
    case LawKind::kAffineBeta:
      return reference_density(x) / (p1 - p0);
    case LawKind::kLogBeta:
      return reference_density(x) / (p1 * kLn10 * mu);
    default:
      return 1.0;
  }
}

double ComponentLaw::cdf(double mu) const {
  if (kind == LawKind::kFixed) return mu >= p0 ? 1.0 : 0.0;
  if (mu <= lower()) return 0.0;
  if (mu >= upper()) return 1.0;
  const double x = to_reference(mu);
  if (kind == LawKind::kUniform) return x;
  return boost::math::ibeta(alpha, beta, x);
}

double ComponentLaw::reference_quantile(double u) const {
  if (kind == LawKind::kFixed) return 0.0;
  u = std::clamp(u, 0.0, 1.0);
  if (kind == LawKind::kUniform) return u;
  return boost::math::ibeta_inv(alpha, beta, u);
}

std::string ComponentLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case LawKind::kUniform:
      os << "Uniform(" << p0 << ", " << p1 << ")";
      break;
    case LawKind::kAffineBeta:
      os << "AffineBeta(" << p0 << ", " << p1 << ", " << alpha << ", " << beta << ")";
      break;
    case LawKind::kLogBeta:
      os << "LogBeta(" << p0 << ", " << p1 << ", " << alpha << ", " << beta << ")";
      break;
    case LawKind::kFixed:
      os << "Fixed(" << p0 << ")";
      break;
  }
  return os.str();
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ParamDistribution::ParamDistribution(std::vector<ComponentLaw> laws) : laws_(std::move(laws)) {
  if (laws_.empty()) throw InvalidArgument("distribution: at least one component required");
  for (const auto& l : laws_) l.validate();
}

ParameterBox ParamDistribution::support() const {
  ParameterBox box;
  for (const auto& l : laws_) {
    box.lower.push_back(l.lower());
    box.upper.push_back(l.upper());
  }
  return box;
}

double ParamDistribution::pdf(const Parameter& mu) const {
  if (mu.size() != laws_.size()) throw InvalidArgument("distribution: parameter dimension mismatch");
  double p = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!laws_[i].in_support(mu[i])) return 0.0;
    p *= laws_[i].density(mu[i]);
  }
  return p;
}

double ParamDistribution::reference_pdf(const Parameter& mu) const {
  if (mu.size() != laws_.size()) throw InvalidArgument("distribution: parameter dimension mismatch");
  double p = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!laws_[i].in_support(mu[i])) return 0.0;
    p *= laws_[i].reference_density(laws_[i].to_reference(mu[i]));
  }
  return p;
}

std::vector<Parameter> ParamDistribution::sample(std::size_t n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Parameter> out(n, Parameter(laws_.size()));
  for (auto& mu : out) {
    for (std::size_t i = 0; i < laws_.size(); ++i) {
      mu[i] = laws_[i].from_reference(laws_[i].reference_quantile(unit_uniform(rng)));
    }
  }
  return out;
}

std::vector<Parameter> ParamDistribution::sample_uniform(std::size_t n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Parameter> out(n, Parameter(laws_.size()));
  for (auto& mu : out) {
    for (std::size_t i = 0; i < laws_.size(); ++i) mu[i] = laws_[i].from_reference(unit_uniform(rng));
  }
  return out;
}

}  // namespace wrb::stochastic
