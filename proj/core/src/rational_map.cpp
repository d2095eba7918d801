#include "vortexlab/rational_map.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unsupported/Eigen/Polynomials>

#include "vortexlab/error.hpp"

namespace vortexlab {

Polynomial::Polynomial(std::vector<complex> c) : c_(std::move(c)) { trim_exact(); }

Polynomial Polynomial::monomial(int k, complex c) {
  std::vector<complex> v(static_cast<std::size_t>(k) + 1, complex{});
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim_exact() {
  while (!c_.empty() && c_.back() == complex{}) c_.pop_back();
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

complex Polynomial::operator()(complex z) const {
  complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<complex> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::trimmed(double tol) const {
  const double cut = tol * max_abs();
  std::vector<complex> v = c_;
  while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  return (1.0 / c_.back()) * *this;
}

int Polynomial::root_multiplicity(complex z0, double tol) const {
  if (c_.empty()) return 0;
  // Taylor coefficients at z0 by repeated synthetic division.
  std::vector<complex> work = c_;
  const double scale = max_abs() * std::pow(std::max(1.0, std::abs(z0)), degree());
  for (int j = 0; j <= degree(); ++j) {
    complex acc{};
    for (std::size_t k = work.size(); k-- > 0;) {
      const complex next = acc * z0 + work[k];
      work[k] = acc;
      acc = next;
    }
    // acc is the j-th Taylor coefficient; work now holds the quotient.
    work.pop_back();
    if (std::abs(acc) > tol * scale) return j;
  }
  return degree();
}

std::vector<complex> Polynomial::roots() const {
  if (degree() < 1) return {};
  if (degree() == 1) return {-c_[0] / c_[1]};
  Eigen::VectorXcd coeffs(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) coeffs[static_cast<Eigen::Index>(k)] = c_[k];
  Eigen::PolynomialSolver<complex, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  const auto& r = solver.roots();
  return {r.data(), r.data() + r.size()};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<complex> v(std::max(a.c_.size(), b.c_.size()), complex{});
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + complex(-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<complex> v(a.c_.size() + b.c_.size() - 1, complex{});
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(complex s, const Polynomial& a) {
  std::vector<complex> v = a.c_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

DivMod divmod(const Polynomial& a, const Polynomial& b, double tol) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZeroPolynomial, "polynomial division by zero");
  std::vector<complex> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<complex> q(static_cast<std::size_t>(a.degree() - db) + 1, complex{});
  for (int k = a.degree() - db; k >= 0; --k) {
    const complex t = r[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(k + db)] = complex{};
  }
  r.resize(static_cast<std::size_t>(db));
  const double cut = tol * std::max(a.max_abs(), 1e-300);
  for (auto& c : r) {
    if (std::abs(c) <= cut) c = complex{};
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b, double tol) {
  Polynomial x = a.monic(), y = b.monic();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y, tol).remainder;
    x = y;
    y = r.trimmed(tol).monic();
    if (r.max_abs() <= tol * std::max(1.0, x.max_abs())) break;
  }
  return x.monic();
}

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(ErrorCode::DivisionByZeroPolynomial, "rational map with zero denominator");
  }
}

RationalMap RationalMap::reduced(double tol) const {
  if (num_.is_zero()) return RationalMap(Polynomial{}, Polynomial::constant(1.0));
  const Polynomial g = gcd(num_, den_, tol);
  if (g.degree() <= 0) return *this;
  return RationalMap(divmod(num_, g, tol).quotient, divmod(den_, g, tol).quotient);
}

bool RationalMap::is_constant() const {
  const RationalMap r = reduced();
  return r.num_.degree() <= 0 && r.den_.degree() <= 0;
}

int RationalMap::degree() const { return std::max(num_.degree(), den_.degree()); }

SpherePoint RationalMap::operator()(complex z) const {
  const complex d = den_(z);
  if (d == complex{}) return {{}, true};
  return {num_(z) / d, false};
}

SpherePoint RationalMap::at_infinity() const {
  const int dn = num_.degree(), dd = den_.degree();
  if (dn > dd) return {{}, true};
  if (dn < dd) return {{0.0, 0.0}, false};
  return {num_.leading() / den_.leading(), false};
}

complex RationalMap::derivative(complex z) const {
  const complex d = den_(z);
  return (num_.derivative()(z) * d - num_(z) * den_.derivative()(z)) / (d * d);
}

RationalMap RationalMap::inverted_argument() const {
  const int D = degree();
  auto rev = [D](const Polynomial& p) {
    std::vector<complex> v(static_cast<std::size_t>(D) + 1, complex{});
    for (int k = 0; k <= p.degree(); ++k) v[static_cast<std::size_t>(D - k)] = p.coeffs()[static_cast<std::size_t>(k)];
    return Polynomial(std::move(v));
  };
  return RationalMap(rev(num_), rev(den_));
}

int RationalMap::local_degree(complex z0) const {
  const int pole = den_.root_multiplicity(z0);
  if (pole > 0 && num_.root_multiplicity(z0) == 0) return pole;
  const complex w0 = num_(z0) / den_(z0);
  return (num_ - w0 * den_).root_multiplicity(z0);
}

int RationalMap::local_degree_at_infinity() const {
  return inverted_argument().reduced().local_degree(0.0);
}

std::vector<complex> RationalMap::ramification_points() const {
  const Polynomial w = (num_.derivative() * den_ - num_ * den_.derivative()).trimmed(1e-14);
  std::vector<complex> r = w.roots();
  // Multiple roots come back as clusters; their mean is accurate.
  std::vector<complex> out;
  std::vector<bool> used(r.size(), false);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (used[i]) continue;
    complex sum = r[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      if (!used[j] && std::abs(r[j] - r[i]) < 1e-4 * std::max(1.0, std::abs(r[i]))) {
        used[j] = true;
        sum += r[j];
        ++count;
      }
    }
    const complex z0 = sum / static_cast<double>(count);
    if (local_degree(z0) >= 2) out.push_back(z0);
  }
  std::sort(out.begin(), out.end(), [](complex a, complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

namespace {

std::string complex_text(complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  return buf;
}

std::string poly_text(const Polynomial& p) {
  if (p.is_zero()) return "(0+0i)";
  std::string s;
  for (int k = 0; k <= p.degree(); ++k) {
    const complex c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c == complex{}) continue;
    if (!s.empty()) s += " + ";
    s += complex_text(c);
    if (k == 1) s += "*z";
    if (k > 1) s += "*z^" + std::to_string(k);
  }
  return s;
}

struct Fraction {
  Polynomial num;
  Polynomial den;
};

Fraction mul(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }

Fraction divide(const Fraction& a, const Fraction& b, std::size_t pos) {
  if (b.num.is_zero()) {
    throw Error(ErrorCode::DivisionByZeroPolynomial,
                "division by the zero polynomial at offset " + std::to_string(pos));
  }
  return {a.num * b.den, a.den * b.num};
}

Fraction add(const Fraction& a, const Fraction& b, double sign) {
  return {a.num * b.den + complex(sign) * (b.num * a.den), a.den * b.den};
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Fraction parse() {
    Fraction f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "parse error at offset " << pos_ << ": " << what;
    throw Error(ErrorCode::SyntaxError, os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static bool starts_primary(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'z' || c == 'i' || c == '(';
  }

  Fraction expr() {
    Fraction f = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      f = add(f, term(), c == '+' ? 1.0 : -1.0);
    }
    return f;
  }

  Fraction term() {
    Fraction f = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        f = mul(f, unary());
      } else if (c == '/') {
        const std::size_t at = pos_++;
        f = divide(f, unary(), at);
      } else if (starts_primary(c)) {
        f = mul(f, power());
      } else {
        return f;
      }
    }
  }

  Fraction unary() {
    const char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      Fraction f = unary();
      if (c == '-') f.num = complex(-1.0) * f.num;
      return f;
    }
    return power();
  }

  Fraction power() {
    Fraction base = primary();
    if (peek() != '^') return base;
    ++pos_;
    int sign = 1;
    char c = peek();
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      ++pos_;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      fail("exponent must be an integer");
    }
    const long e = std::strtol(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
    if (e > 256) fail("exponent too large");
    Fraction out{Polynomial::constant(1.0), Polynomial::constant(1.0)};
    for (long k = 0; k < e; ++k) out = mul(out, base);
    if (sign < 0) {
      if (out.num.is_zero()) {
        throw Error(ErrorCode::DivisionByZeroPolynomial,
                    "negative power of the zero polynomial at offset " + std::to_string(start));
      }
      std::swap(out.num, out.den);
    }
    return out;
  }

  Fraction primary() {
    const char c = peek();
    const Polynomial one = Polynomial::constant(1.0);
    if (c == 'z') {
      ++pos_;
      return {Polynomial::monomial(1), one};
    }
    if (c == 'i') {
      ++pos_;
      return {Polynomial::constant({0.0, 1.0}), one};
    }
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return {Polynomial::constant({0.0, v}), one};
      }
      return {Polynomial::constant(v), one};
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string RationalMap::to_string() const {
  return "(" + poly_text(num_) + ")/(" + poly_text(den_) + ")";
}

RationalMap parse_rational_map(const std::string& text) {
  Fraction f = Parser(text).parse();
  return RationalMap(std::move(f.num), std::move(f.den)).reduced();
}

}  // namespace vortexlab
