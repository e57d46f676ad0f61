#pragma once

#include <stdexcept>
#include <string>

namespace lpb {

// Mirrors lpb_status in the public C header; keep values in sync.
enum class Status : int {
  Ok = 0,
  InvalidArgument = 1,
  NotSymmetric = 2,
  NotPsd = 3,
  NotPd = 4,
  SingularCovariance = 5,
  ImproperPrior = 6,
  DegreeTooLarge = 7,
  DimensionTooLarge = 8,
  EmptyPosterior = 9,
  QuadratureUnderflow = 10,
  NoZeroFound = 11,
  NoConvergence = 12,
  RankDeficientGrid = 13,
  Normalization = 14,
  Io = 15,
  Internal = 16,
};

const char* status_name(Status status);

class Error : public std::runtime_error {
 public:
  Error(Status status, std::string message)
      : std::runtime_error(std::move(message)), status_(status) {}

  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& message) {
  throw Error(status, message);
}

inline void require(bool condition, Status status, const std::string& message) {
  if (!condition) fail(status, message);
}

}  // namespace lpb
