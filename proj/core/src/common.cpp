#include "wrb/common.hpp"

#include <cmath>
#include <sstream>

namespace wrb {

bool ParameterBox::contains(const Parameter& mu, double rel_slack) const {
  if (mu.size() != lower.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double slack = rel_slack * std::max({1.0, std::abs(lower[i]), std::abs(upper[i])});
    if (!(mu[i] >= lower[i] - slack && mu[i] <= upper[i] + slack)) return false;
  }
  return true;
}

double ParameterBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

void ParameterBox::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw InvalidArgument("parameter box: lower/upper must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw InvalidArgument("parameter box: component " + std::to_string(i) + " is empty or not finite");
    }
  }
}

std::string to_string(const Parameter& mu) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) os << ", ";
    os << mu[i];
  }
  os << ')';
  return os.str();
}

}  // namespace wrb
