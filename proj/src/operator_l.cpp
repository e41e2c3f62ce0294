#include "gch/operator_l.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gch/errors.hpp"

namespace gch {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view preset) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ConfigError("malformed number '" + item + "' in preset '" + std::string(preset) + "'",
                        "operator");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

OperatorL OperatorL::polynomial(std::vector<double> coeffs, std::string name) {
  if (coeffs.empty()) throw ConfigError("polynomial symbol needs at least one coefficient", "operator");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw ConfigError("polynomial coefficients must be finite", "operator");
  }
  if (!(coeffs.back() > 0.0)) {
    throw ConfigError("leading polynomial coefficient must be positive", "operator");
  }
  const double order = 2.0 * static_cast<double>(coeffs.size() - 1);
  if (name.empty()) {
    std::ostringstream os;
    os << "poly:";
    for (std::size_t j = 0; j < coeffs.size(); ++j) os << (j ? "," : "") << coeffs[j];
    name = os.str();
  }
  return OperatorL(Kind::Polynomial, std::move(coeffs), order, std::move(name));
}

OperatorL OperatorL::bessel_power(double alpha2, double p, std::string name) {
  if (!(alpha2 > 0.0) || !std::isfinite(alpha2)) {
    throw ConfigError("amplitude alpha^2 must be positive", "operator");
  }
  if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("order p must be >= 0", "operator");
  if (name.empty()) {
    std::ostringstream os;
    os << "bessel:" << p << "," << alpha2;
    name = os.str();
  }
  return OperatorL(Kind::BesselPower, {alpha2}, p, std::move(name));
}

OperatorL OperatorL::preset(std::string_view name) {
  if (name == "identity") return polynomial({1.0}, "identity");
  if (name == "alpha2") return polynomial({0.5}, "alpha2");
  if (name == "helmholtz") return polynomial({1.0, 1.0}, "helmholtz");
  if (name == "example-vi") return polynomial({2.0, 1.0}, "example-vi");

  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const auto head = name.substr(0, colon);
    const auto args = parse_numbers(name.substr(colon + 1), name);
    if (head == "alpha2" && args.size() == 1) return polynomial({args[0]}, std::string(name));
    if (head == "bessel" && args.size() == 2) return bessel_power(args[1], args[0], std::string(name));
    if (head == "poly" && !args.empty()) return polynomial(args, std::string(name));
  }
  throw ConfigError("unknown operator preset '" + std::string(name) + "'", "operator");
}

std::vector<std::string> OperatorL::preset_names() {
  return {"identity", "alpha2", "helmholtz", "example-vi"};
}

double OperatorL::symbol(double k) const noexcept {
  const double k2 = k * k;
  if (kind_ == Kind::BesselPower) return coeffs_[0] * std::pow(1.0 + k2, 0.5 * order_);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k2 + *it;
  return acc;
}

void OperatorL::validate_on(const Grid& grid) const {
  for (int j = 0; j < grid.half_size(); ++j) {
    const double value = symbol(grid.wavenumber(j));
    if (!(value > 0.0) || !std::isfinite(value)) {
      std::ostringstream os;
      os << "symbol of '" << name_ << "' is not positive at k = " << grid.wavenumber(j);
      throw ConfigError(os.str(), "operator");
    }
  }
}

}  // namespace gch
