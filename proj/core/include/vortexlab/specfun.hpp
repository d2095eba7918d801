#pragma once

#include <complex>

namespace vortexlab::specfun {

using complex = std::complex<double>;

/// Gamma function for real arguments (Lanczos, reflection below 1/2).
/// Throws Error{PoleArgument} at nonpositive integers.
double gamma(double x);

/// 1/Gamma(x); zero at the poles of Gamma instead of throwing.
double rgamma(double x);

/// Which cut the caller declares for the evaluation.
enum class Branch {
  /// F(a,b;c;z), analytic on C \ [1, inf).
  Principal,
  /// F(a,b;c;1-z), analytic in z on C \ (-inf, 0].
  Reflected,
};

struct Hyp2F1Query {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  complex z{0.0, 0.0};
  Branch branch = Branch::Principal;
};

/// Evaluation strategies of the transformation ladder. `Auto` picks the
/// first applicable one; the others force a path (used for cross-checks).
enum class Path {
  Auto,
  Maclaurin,
  OneMinusZ,
  PfaffMaclaurin,
  PfaffOneMinusZ,
  Continuation,
};

/// Gauss hypergeometric function 2F1(a,b;c;.) on the cut plane.
/// Throws DomainCut on the declared cut and NoConvergence when the ladder
/// fails.
complex hyp2f1(const Hyp2F1Query& q);

/// d/dz of hyp2f1(q) with respect to the query's own variable z.
complex hyp2f1_derivative(const Hyp2F1Query& q);

/// 2F1(a,b;c;x) at the hypergeometric argument x itself, through a fixed path.
complex hyp2f1_via(double a, double b, double c, complex x, Path path);

}  // namespace vortexlab::specfun
