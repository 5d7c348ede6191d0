#pragma once

#include <stdexcept>
#include <string>

namespace msf {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_lattice_error : error {
  using error::error;
};

// Enumeration request would produce more points than the configured budget.
struct budget_exceeded_error : error {
  budget_exceeded_error(const std::string& msg, double estimate)
      : error(msg), estimated_count(estimate) {}
  double estimated_count;
};

// An enumerated lattice point lands within tolerance of the window boundary.
struct non_generic_error : error {
  using error::error;
};

struct coverage_error : error {
  using error::error;
};

struct resolution_error : error {
  using error::error;
};

struct truncation_error : error {
  using error::error;
};

struct config_error : error {
  using error::error;
};

struct empty_set_error : error {
  using error::error;
};

struct membership_error : error {
  using error::error;
};

}  // namespace msf
