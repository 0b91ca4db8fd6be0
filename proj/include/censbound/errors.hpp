#pragma once

#include <stdexcept>
#include <string>

namespace censbound {

// Bad inputs: malformed files, schema violations, out-of-contract arguments.
// The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failures that depend on the data values rather than their shape.
// The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TiePresent : public ValidationError {
 public:
  TiePresent()
      : ValidationError(
            "sample has failure/censoring ties; the discrete identities are "
            "only guaranteed on tie-free samples") {}
};

class DependsOnCovariates : public ValidationError {
 public:
  DependsOnCovariates()
      : ValidationError(
            "function depends on covariates; the Kaplan-Meier functional "
            "representation needs a time-only function") {}
};

class MissingInput : public ValidationError {
 public:
  explicit MissingInput(const std::string& field)
      : ValidationError("missing required input: " + field) {}
};

class TooFewSamples : public ValidationError {
 public:
  explicit TooFewSamples(const std::string& what) : ValidationError(what) {}
};

class OutOfDomain : public ValidationError {
 public:
  explicit OutOfDomain(const std::string& what) : ValidationError(what) {}
};

class UnsupportedScenario : public ValidationError {
 public:
  explicit UnsupportedScenario(const std::string& what)
      : ValidationError(what) {}
};

class NoResponseModel : public ValidationError {
 public:
  NoResponseModel() : ValidationError("scenario has no response model") {}
};

class EmptyNet : public ValidationError {
 public:
  EmptyNet() : ValidationError("function class net is empty") {}
};

class UnsupportedClass : public ValidationError {
 public:
  explicit UnsupportedClass(const std::string& what)
      : ValidationError(what) {}
};

class ZeroDenominator : public NumericError {
 public:
  ZeroDenominator()
      : NumericError(
            "IPCW weight denominator G_hat(u-) is zero at an uncensored "
            "observation") {}
};

class NonpositiveNormalizer : public NumericError {
 public:
  explicit NonpositiveNormalizer(const std::string& field)
      : NumericError("normalizing constant must be positive: " + field) {}
};

class NoFailures : public NumericError {
 public:
  NoFailures() : NumericError("sample contains no uncensored observations") {}
};

class Unattainable : public NumericError {
 public:
  explicit Unattainable(const std::string& what) : NumericError(what) {}
};

class BoundViolation : public NumericError {
 public:
  explicit BoundViolation(const std::string& what) : NumericError(what) {}
};

}  // namespace censbound
