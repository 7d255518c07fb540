#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dwb {

using Rat = boost::multiprecision::cpp_rational;

/// Global tolerance policy for all numeric-mode comparisons.
/// Exact-mode containers never consult it.
class Tolerance {
 public:
  static double get() { return instance(); }
  static void set(double eps) {
    if (eps <= 0) throw std::invalid_argument("tolerance must be positive");
    instance() = eps;
  }

 private:
  static double& instance() {
    static double eps = 1e-9;
    return eps;
  }
};

/// Gaussian rational: exact complex scalar re + im*i over Q.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(long r) : re(r) {}
  GaussRat(int r) : re(r) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussRat operator-() const { return {-re, -im}; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("division by zero GaussRat");
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  std::string str() const {
    std::ostringstream os;
    os << re;
    if (im != 0) os << (im > 0 ? "+" : "") << im << "i";
    return os.str();
  }
};

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
  boost::multiprecision::cpp_int p(s.substr(0, slash)), q(s.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(p, q);
}

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Field traits shared by exact and numeric scalars.

template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& x) { return x == 0; }
  static double abs_approx(const Rat& x) { return std::abs(static_cast<double>(x)); }
};

template <>
struct FieldOps<GaussRat> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussRat& x) { return x.is_zero(); }
  static double abs_approx(const GaussRat& x) { return std::abs(x.to_complex()); }
};

template <>
struct FieldOps<std::complex<double>> {
  static constexpr bool exact = false;
  static bool is_zero(const std::complex<double>& x) {
    return std::abs(x) <= Tolerance::get();
  }
  static double abs_approx(const std::complex<double>& x) { return std::abs(x); }
};

}  // namespace dwb
