#include "core/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace se2sr {
namespace {

constexpr double kEps = 2.220446049250313e-16;

// Above this modulus the AGM sequence for am/sn/cn/dn bottoms out in noise;
// use the hyperbolic limit functions instead. K is ~14.5 there, so the
// substitution is accurate for the argument ranges the library produces.
constexpr double kHyperbolicBand = 1.0 - 1e-12;

// Switch point for the complete-integral logarithmic asymptotics near k = 1.
constexpr double kAsymptoticBand = 1.0 - 1e-9;

void require_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw Error(ErrorCode::Domain,
                "elliptic modulus must satisfy 0 <= k <= 1, got k = " +
                    std::to_string(k));
  }
}

// Complementary parameter 1 - k^2 without cancellation near k = 1.
double comp_param(double k) { return (1.0 - k) * (1.0 + k); }

struct AgmScale {
  double a[64];
  double c[64];
  int n;
};

// Runs the AGM from (1, k') recording the scales needed by the amplitude
// recurrence. Terminates when c_n underflows relative to a_n.
AgmScale agm_run(double k) {
  AgmScale s;
  double a = 1.0, b = std::sqrt(comp_param(k)), c = k;
  int n = 0;
  s.a[0] = a;
  s.c[0] = c;
  while (std::fabs(c) > kEps * a && n < 60) {
    double an = 0.5 * (a + b);
    double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn;
    ++n;
    s.a[n] = a;
    s.c[n] = c;
  }
  s.n = n;
  return s;
}

}  // namespace

CompleteIntegrals complete_integrals(double k) {
  require_modulus(k);
  if (k == 0.0) return {kPi / 2.0, kPi / 2.0};
  if (k == 1.0) return {kInf, 1.0};
  double kp2 = comp_param(k);
  if (k > kAsymptoticBand) {
    double kp = std::sqrt(kp2);
    double L = std::log(4.0 / kp);
    double K = L + 0.25 * kp2 * (L - 1.0);
    double E = 1.0 + 0.5 * kp2 * (L - 0.5);
    return {K, E};
  }
  double a = 1.0, b = std::sqrt(kp2), c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  while (std::fabs(c) > kEps * a) {
    double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  double K = kPi / (2.0 * a);
  double E = K * (1.0 - sum);
  return {K, E};
}

double jacobi_am(double u, double k) {
  require_modulus(k);
  if (k == 0.0) return u;
  if (k >= kHyperbolicBand) return std::atan(std::sinh(u));
  double K = complete_integrals(k).K;
  // Reduce to |ur| <= 2K using am(u + 4K n) = am(u) + 2 pi n.
  double n = std::nearbyint(u / (4.0 * K));
  double ur = u - 4.0 * K * n;
  AgmScale s = agm_run(k);
  double phi = std::ldexp(s.a[s.n] * ur, s.n);
  for (int i = s.n; i >= 1; --i) {
    phi = 0.5 * (phi + std::asin(std::clamp(s.c[i] / s.a[i] * std::sin(phi),
                                            -1.0, 1.0)));
  }
  return phi + kTwoPi * n;
}

Jacobi jacobi_sn_cn_dn(double u, double k) {
  require_modulus(k);
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (k >= kHyperbolicBand) {
    double sn = std::tanh(u);
    double cn = 1.0 / std::cosh(u);
    double dn = std::sqrt(cn * cn + comp_param(k) * sn * sn);
    return {sn, cn, dn};
  }
  double phi = jacobi_am(u, k);
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  double dn = std::sqrt(cn * cn + comp_param(k) * sn * sn);
  return {sn, cn, dn};
}

double carlson_rf(double x, double y, double z) {
  // Carlson duplication algorithm; requires x, y, z >= 0 with at most one zero.
  int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
  if (x < 0.0 || y < 0.0 || z < 0.0 || zeros > 1) {
    throw Error(ErrorCode::Domain, "carlson_rf arguments out of range");
  }
  double A = (x + y + z) / 3.0;
  double M =
      std::max({std::fabs(A - x), std::fabs(A - y), std::fabs(A - z)});
  double Q = std::pow(3.0 * 1e-18, -1.0 / 6.0) * M;
  double f = 1.0;
  while (Q > f * std::fabs(A)) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sy * sz + sz * sx;
    A = 0.25 * (A + lam);
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    f *= 4.0;
  }
  // Scaled deviations at the final iterate; (A - x) shrinks by 4 each round,
  // so these equal the textbook (A0 - x0) / (4^m A_m).
  double Xs = 1.0 - x / A;
  double Ys = 1.0 - y / A;
  double Zs = -(Xs + Ys);
  double E2 = Xs * Ys - Zs * Zs;
  double E3 = Xs * Ys * Zs;
  return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 -
          3.0 * E2 * E3 / 44.0) /
         std::sqrt(A);
}

double carlson_rd(double x, double y, double z) {
  int zeros = (x == 0.0) + (y == 0.0);
  if (x < 0.0 || y < 0.0 || z <= 0.0 || zeros > 1) {
    throw Error(ErrorCode::Domain, "carlson_rd arguments out of range");
  }
  double A = (x + y + 3.0 * z) / 5.0;
  double sum = 0.0;
  double f = 1.0;
  double M =
      std::max({std::fabs(A - x), std::fabs(A - y), std::fabs(A - z)});
  double Q = std::pow(0.25 * 1e-18, -1.0 / 6.0) * M;
  while (Q > f * std::fabs(A)) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sy * sz + sz * sx;
    sum += 1.0 / (f * sz * (z + lam));
    A = 0.25 * (A + lam);
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    f *= 4.0;
  }
  double Xs = 1.0 - x / A;
  double Ys = 1.0 - y / A;
  double Zs = -(Xs + Ys) / 3.0;
  double E2 = Xs * Ys - 6.0 * Zs * Zs;
  double E3 = (3.0 * Xs * Ys - 8.0 * Zs * Zs) * Zs;
  double E4 = 3.0 * (Xs * Ys - Zs * Zs) * Zs * Zs;
  double E5 = Xs * Ys * Zs * Zs * Zs;
  double series = 1.0 - 3.0 * E2 / 14.0 + E3 / 6.0 + 9.0 * E2 * E2 / 88.0 -
                  3.0 * E4 / 22.0 - 9.0 * E2 * E3 / 52.0 + 3.0 * E5 / 26.0;
  return series / (f * A * std::sqrt(A)) + 3.0 * sum;
}

namespace {

// Legendre F on the principal branch |phi| <= pi/2.
double legendre_F_principal(double phi, double k) {
  double s = std::sin(phi);
  double c2 = std::cos(phi) * std::cos(phi);
  double d = 1.0 - (k * s) * (k * s);
  return s * carlson_rf(c2, d, 1.0);
}

// Legendre E on the principal branch |phi| <= pi/2.
double legendre_E_principal(double phi, double k) {
  double s = std::sin(phi);
  double c2 = std::cos(phi) * std::cos(phi);
  double d = 1.0 - (k * s) * (k * s);
  double s3 = s * s * s;
  return s * carlson_rf(c2, d, 1.0) - (k * k / 3.0) * s3 * carlson_rd(c2, d, 1.0);
}

}  // namespace

double incomplete_F(double phi, double k) {
  require_modulus(k);
  if (k == 0.0) return phi;
  if (k == 1.0) {
    if (std::fabs(phi) >= kPi / 2.0) {
      throw Error(ErrorCode::Domain,
                  "incomplete_F diverges at k = 1 for |phi| >= pi/2");
    }
    return std::atanh(std::sin(phi));
  }
  double n = std::nearbyint(phi / kPi);
  double phir = phi - kPi * n;
  double F = legendre_F_principal(phir, k);
  if (n == 0.0) return F;
  double K = complete_integrals(k).K;
  return F + 2.0 * K * n;
}

double jacobi_epsilon(double u, double k) {
  require_modulus(k);
  if (k == 0.0) return u;
  if (k >= kHyperbolicBand) return std::tanh(u);
  CompleteIntegrals KE = complete_integrals(k);
  double n = std::nearbyint(u / (2.0 * KE.K));
  double ur = u - 2.0 * KE.K * n;
  // |ur| <= K, so the amplitude of ur stays on the principal branch.
  Jacobi j = jacobi_sn_cn_dn(ur, k);
  double amp = std::asin(std::clamp(j.sn, -1.0, 1.0));
  return legendre_E_principal(amp, k) + 2.0 * KE.E * n;
}

}  // namespace se2sr
