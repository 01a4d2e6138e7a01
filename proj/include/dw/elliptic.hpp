#pragma once

namespace dw {

struct JacobiValues {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn, cn, dn at u for parameter m in [0, 1] (cn(u, 0) = cos u, cn(u, 1) =
/// sech u), by the descending Landen / AGM scheme. Throws DomainError for m
/// outside [0, 1].
JacobiValues jacobi_elliptic(double u, double m);

inline double jacobi_cn(double u, double m) { return jacobi_elliptic(u, m).cn; }

}  // namespace dw
