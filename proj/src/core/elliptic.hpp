// Jacobi elliptic functions and elliptic integrals on the real line.
//
// Convention: every function below takes the modulus k (not the parameter
// m = k^2). Valid modulus range is [0, 1]; values outside raise
// Error(ErrorCode::Domain).
//
// Algorithms: arithmetic-geometric mean for the complete integrals, the
// AGM descending-transformation recurrence for am/sn/cn/dn, and Carlson
// symmetric forms R_F/R_D for the incomplete integrals.
#pragma once

#include "core/types.hpp"

namespace se2sr {

struct CompleteIntegrals {
  double K;  // complete integral of the first kind; +inf at k = 1
  double E;  // complete integral of the second kind
};

// Absolute error <= 1e-13 over the full range. K(1) is the +inf sentinel.
CompleteIntegrals complete_integrals(double k);

struct Jacobi {
  double sn;
  double cn;
  double dn;
};

// Jacobi functions for any real u. The pair (sn, cn) is a point on the unit
// circle by construction, and dn = sqrt(cn^2 + (1-k^2) sn^2) exactly, so both
// defining identities hold to rounding.
Jacobi jacobi_sn_cn_dn(double u, double k);

// Continuous Jacobi amplitude: am(0) = 0, d/du am = dn, am(u + 2K) = am(u) + pi.
// At k = 1 this is the gudermannian atan(sinh u).
double jacobi_am(double u, double k);

// Jacobi epsilon: integral of dn^2 from 0 to u. Satisfies
// jacobi_epsilon(K, k) = E(k) and the quasi-periodicity eps(u + 2K) = eps(u) + 2E.
double jacobi_epsilon(double u, double k);

// Legendre incomplete integral of the first kind F(phi, k) for any real phi,
// extended by F(phi + n pi) = F(phi) + 2 n K.
double incomplete_F(double phi, double k);

// Carlson symmetric elliptic integrals (building blocks, exposed for tests).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

}  // namespace se2sr
