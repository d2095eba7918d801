#pragma once

#include <complex>
#include <string>
#include <vector>

namespace vortexlab {

using complex = std::complex<double>;

/// Dense polynomial, coefficients in increasing degree. The zero polynomial
/// is the empty vector.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<complex> c);
  static Polynomial constant(complex c) { return Polynomial({c}); }
  static Polynomial monomial(int k, complex c = 1.0);

  const std::vector<complex>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  complex leading() const { return c_.empty() ? complex{} : c_.back(); }
  double max_abs() const;

  complex operator()(complex z) const;
  Polynomial derivative() const;
  /// Drops trailing coefficients with |c| <= tol * max_abs().
  Polynomial trimmed(double tol) const;
  Polynomial monic() const;
  /// Order of vanishing at z0, deciding zero at relative tolerance tol.
  int root_multiplicity(complex z0, double tol = 1e-8) const;
  /// Roots by companion matrix eigenvalues.
  std::vector<complex> roots() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(complex s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim_exact();
  std::vector<complex> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b, double tol = 1e-12);

/// Monic gcd by the Euclidean algorithm; remainders below tol relative to the
/// inputs count as zero.
Polynomial gcd(const Polynomial& a, const Polynomial& b, double tol = 1e-10);

/// Value on the Riemann sphere: finite, or infinite.
struct SpherePoint {
  complex w{0.0, 0.0};
  bool infinity = false;
};

class RationalMap {
 public:
  RationalMap(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Common factors removed; the denominator keeps its leading coefficient.
  RationalMap reduced(double tol = 1e-10) const;
  bool is_constant() const;
  int degree() const;

  SpherePoint operator()(complex z) const;
  SpherePoint at_infinity() const;
  /// f'(z) at a finite non-pole.
  complex derivative(complex z) const;
  /// f(1/w) as a map in w.
  RationalMap inverted_argument() const;

  /// Local degree k at z0 (pole order at a pole).
  int local_degree(complex z0) const;
  int local_degree_at_infinity() const;

  /// Finite points where the local degree exceeds 1.
  std::vector<complex> ramification_points() const;

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary | implicit)*   implicit: juxtaposed power
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['+' | '-'] integer)?
///   primary := number ['i'] | 'z' | 'i' | '(' expr ')'
/// Numbers are decimal with optional exponent. Throws SyntaxError (with the
/// character offset) and DivisionByZeroPolynomial.
RationalMap parse_rational_map(const std::string& text);

}  // namespace vortexlab
