#pragma once

#include <string>
#include <vector>

#include "scalar.hpp"

namespace dwb {

/// Polynomial in the formal parameter hbar with exact rational coefficients.
struct HPoly {
  std::vector<Rat> c;  // c[j] multiplies hbar^j

  HPoly() = default;
  HPoly(Rat r) {
    if (r != 0) c.push_back(std::move(r));
  }
  HPoly(int r) : HPoly(Rat(r)) {}

  static HPoly hbar(int power = 1) {
    HPoly h;
    h.c.assign(power + 1, Rat(0));
    h.c[power] = 1;
    return h;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const {
    for (auto& x : c)
      if (x != 0) return false;
    return true;
  }
  int degree() const {
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
      if (c[j] != 0) return j;
    return -1;
  }
  Rat coeff(int j) const { return j < static_cast<int>(c.size()) ? c[j] : Rat(0); }

  HPoly& operator+=(const HPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t j = 0; j < o.c.size(); ++j) c[j] += o.c[j];
    trim();
    return *this;
  }
  HPoly& operator-=(const HPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t j = 0; j < o.c.size(); ++j) c[j] -= o.c[j];
    trim();
    return *this;
  }
  HPoly& operator*=(const HPoly& o) {
    if (is_zero() || o.is_zero()) {
      c.clear();
      return *this;
    }
    std::vector<Rat> out(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
    }
    c = std::move(out);
    trim();
    return *this;
  }

  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
  friend HPoly operator*(HPoly a, const HPoly& b) { return a *= b; }
  friend HPoly operator-(HPoly a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend bool operator==(const HPoly& a, const HPoly& b) {
    HPoly d = a;
    d -= b;
    return d.is_zero();
  }
  friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

  Rat eval(const Rat& h) const {
    Rat v = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) v = v * h + c[j];
    return v;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      if (!s.empty()) s += " + ";
      if (j == 0) {
        s += rat_to_string(c[j]);
      } else {
        if (c[j] != 1) s += rat_to_string(c[j]) + "*";
        s += "h";
        if (j > 1) s += "^" + std::to_string(j);
      }
    }
    return s;
  }
};

}  // namespace dwb
