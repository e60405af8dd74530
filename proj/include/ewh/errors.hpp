#pragma once

#include <stdexcept>
#include <string>

namespace ewh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by a jet with vanishing value part, or an elementary function
// evaluated outside its domain.
class SingularPointError : public Error {
 public:
  SingularPointError(const std::string& what, double offending)
      : Error(what), offending_(offending) {}
  double offending() const { return offending_; }

 private:
  double offending_;
};

class DegenerateMetricError : public Error {
 public:
  DegenerateMetricError(const std::string& what, double det)
      : Error(what), det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

class PoleError : public Error {
 public:
  PoleError(const std::string& what, double nearest_pole)
      : Error(what), nearest_pole_(nearest_pole) {}
  double nearest_pole() const { return nearest_pole_; }

 private:
  double nearest_pole_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested evaluation lies outside a family's admissible x-window.
class WindowError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double bound)
      : Error(what), estimate_(estimate), bound_(bound) {}
  double estimate() const { return estimate_; }
  double bound() const { return bound_; }

 private:
  double estimate_;
  double bound_;
};

class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ewh
