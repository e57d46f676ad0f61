#include "errors.hpp"

namespace lpb {

const char* status_name(Status status) {
  switch (status) {
    case Status::Ok: return "OK";
    case Status::InvalidArgument: return "INVALID_ARGUMENT";
    case Status::NotSymmetric: return "NOT_SYMMETRIC";
    case Status::NotPsd: return "NOT_PSD";
    case Status::NotPd: return "NOT_PD";
    case Status::SingularCovariance: return "SINGULAR_COVARIANCE";
    case Status::ImproperPrior: return "IMPROPER_PRIOR";
    case Status::DegreeTooLarge: return "DEGREE_TOO_LARGE";
    case Status::DimensionTooLarge: return "DIMENSION_TOO_LARGE";
    case Status::EmptyPosterior: return "EMPTY_POSTERIOR";
    case Status::QuadratureUnderflow: return "QUADRATURE_UNDERFLOW";
    case Status::NoZeroFound: return "NO_ZERO_FOUND";
    case Status::NoConvergence: return "NO_CONVERGENCE";
    case Status::RankDeficientGrid: return "RANK_DEFICIENT_GRID";
    case Status::Normalization: return "NORMALIZATION";
    case Status::Io: return "IO";
    case Status::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace lpb
