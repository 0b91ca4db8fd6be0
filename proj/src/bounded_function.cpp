#include "censbound/bounded_function.hpp"

#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

#include "censbound/errors.hpp"

namespace censbound {

BoundedFunction::BoundedFunction(Evaluator evaluator, double bound_m,
                                 bool depends_on_z, std::string label)
    : evaluator_(std::move(evaluator)),
      bound_m_(bound_m),
      depends_on_z_(depends_on_z),
      label_(std::move(label)) {
  if (!(bound_m_ > 0.0)) {
    throw ValidationError("BoundedFunction: bound M must be positive");
  }
}

double BoundedFunction::operator()(double t,
                                   std::span<const double> z) const {
  const double value = evaluator_(t, z);
  if (!(std::fabs(value) <= bound_m_)) {
    throw BoundViolation("function value " + std::to_string(value) +
                         " exceeds declared bound M = " +
                         std::to_string(bound_m_) +
                         (label_.empty() ? "" : " (" + label_ + ")"));
  }
  return value;
}

BoundedFunction time_identity(double tau) {
  return BoundedFunction(
      [](double t, std::span<const double>) { return t; }, tau, false, "t");
}

BoundedFunction time_indicator(double threshold) {
  return BoundedFunction(
      [threshold](double t, std::span<const double>) {
        return t >= threshold ? 1.0 : 0.0;
      },
      1.0, false, "indicator:" + std::to_string(threshold));
}

BoundedFunction time_polynomial(std::vector<double> coefficients, double tau) {
  if (coefficients.empty()) {
    throw ValidationError("time_polynomial: needs at least one coefficient");
  }
  // Conservative sup bound sum_i |c_i| tau^i over [0, tau].
  double bound = 0.0;
  double power = 1.0;
  for (double c : coefficients) {
    bound += std::fabs(c) * power;
    power *= tau;
  }
  if (bound == 0.0) bound = 1.0;  // all-zero polynomial
  return BoundedFunction(
      [coefficients = std::move(coefficients)](double t,
                                               std::span<const double>) {
        double value = 0.0;
        for (std::size_t i = coefficients.size(); i-- > 0;) {
          value = value * t + coefficients[i];
        }
        return value;
      },
      bound, false, "poly");
}

BoundedFunction time_times_covariate(std::size_t covariate_index, double tau) {
  if (covariate_index == 0) {
    throw ValidationError("time_times_covariate: index is 1-based");
  }
  return BoundedFunction(
      [covariate_index](double t, std::span<const double> z) {
        if (covariate_index > z.size()) {
          throw ValidationError("covariate index out of range");
        }
        return t * z[covariate_index - 1];
      },
      tau, true, "t*z" + std::to_string(covariate_index));
}

BoundedFunction constant_function(double value) {
  const double bound = std::fabs(value) > 0.0 ? std::fabs(value) : 1.0;
  return BoundedFunction(
      [value](double, std::span<const double>) { return value; }, bound,
      false, "const:" + std::to_string(value));
}

namespace {

double parse_double_at(const std::string& text, std::size_t offset,
                       std::size_t end, const std::string& selector) {
  double value = 0.0;
  const char* first = text.data() + offset;
  const char* last = text.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("invalid number in function selector '" + selector +
                          "' at position " + std::to_string(offset));
  }
  return value;
}

}  // namespace

BoundedFunction parse_function(const std::string& selector, double tau) {
  if (!(tau > 0.0)) throw ValidationError("parse_function: tau must be positive");
  if (selector == "t") return time_identity(tau);
  if (selector.rfind("indicator:", 0) == 0) {
    const double s =
        parse_double_at(selector, 10, selector.size(), selector);
    return time_indicator(s);
  }
  if (selector.rfind("poly:", 0) == 0) {
    std::vector<double> coefficients;
    std::size_t start = 5;
    while (start <= selector.size()) {
      std::size_t comma = selector.find(',', start);
      if (comma == std::string::npos) comma = selector.size();
      if (comma == start) {
        throw ValidationError("empty coefficient in selector '" + selector +
                              "' at position " + std::to_string(start));
      }
      coefficients.push_back(parse_double_at(selector, start, comma, selector));
      start = comma + 1;
      if (comma == selector.size()) break;
    }
    if (coefficients.empty()) {
      throw ValidationError("poly selector needs at least one coefficient");
    }
    return time_polynomial(std::move(coefficients), tau);
  }
  if (selector.rfind("t*z", 0) == 0) {
    std::size_t index = 0;
    const char* first = selector.data() + 3;
    const char* last = selector.data() + selector.size();
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc() || ptr != last || index == 0) {
      throw ValidationError("invalid covariate index in selector '" + selector +
                            "' at position 3");
    }
    return time_times_covariate(index, tau);
  }
  throw ValidationError("unknown function selector '" + selector +
                        "' at position 0");
}

}  // namespace censbound
