#pragma once
// Residual records emitted by every check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

namespace kaehler {

enum class Status { kPass, kFail, kHypothesisFailed, kNotApplicable };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kHypothesisFailed:
      return "hypothesis failed";
    default:
      return "not applicable";
  }
}

/// How `residual` was formed.
enum class ResidualKind { kRelative, kAbsolute, kMargin };

inline const char* kind_name(ResidualKind k) {
  switch (k) {
    case ResidualKind::kRelative:
      return "relative";
    case ResidualKind::kAbsolute:
      return "absolute";
    default:
      return "margin";
  }
}

struct ResidualReport {
  std::string check_id;
  std::string anchor;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_residual = 0.0;
  double residual = 0.0;  // the quantity compared with the tolerance
  double scale = 0.0;     // extra magnitude in the relative denominator
  double tolerance = 0.0;
  ResidualKind kind = ResidualKind::kRelative;
  Status status = Status::kFail;
  // quadrature metadata
  int lat = 0, lon = 0, radial = 0;
  std::size_t nodes = 0;
  double quad_error = 0.0;
  // pointwise metadata
  std::size_t samples = 0;
  std::string note;

  bool pass() const { return status == Status::kPass; }
  /// Counts against the run: failures only.
  bool failed() const { return status == Status::kFail; }
};

/// lhs = rhs up to tol, relative to max(|lhs|, |rhs|, scale, 1e-30).
inline ResidualReport equality_report(std::string id, std::string anchor, std::complex<double> lhs,
                                      std::complex<double> rhs, double tol, double scale = 0.0) {
  ResidualReport r;
  r.check_id = std::move(id);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.scale = scale;
  r.tolerance = tol;
  r.kind = ResidualKind::kRelative;
  r.abs_residual = std::abs(lhs - rhs);
  r.residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), scale, 1e-30});
  r.status = r.residual <= tol ? Status::kPass : Status::kFail;
  return r;
}

/// Largest pointwise residual over `samples` points, compared absolutely.
inline ResidualReport pointwise_report(std::string id, std::string anchor, double max_residual,
                                       double tol, std::size_t samples) {
  ResidualReport r;
  r.check_id = std::move(id);
  r.anchor = std::move(anchor);
  r.lhs = max_residual;
  r.rhs = 0.0;
  r.abs_residual = r.residual = max_residual;
  r.tolerance = tol;
  r.kind = ResidualKind::kAbsolute;
  r.samples = samples;
  r.status = (max_residual <= tol) ? Status::kPass : Status::kFail;
  return r;
}

/// Inequality lhs >= rhs: residual is the shortfall max(0, rhs - lhs).
inline ResidualReport margin_report(std::string id, std::string anchor, double lhs, double rhs,
                                    double tol) {
  ResidualReport r;
  r.check_id = std::move(id);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = lhs - rhs;  // signed margin
  r.residual = std::max(0.0, rhs - lhs);
  r.tolerance = tol;
  r.kind = ResidualKind::kMargin;
  r.status = r.residual <= tol ? Status::kPass : Status::kFail;
  return r;
}

}  // namespace kaehler
