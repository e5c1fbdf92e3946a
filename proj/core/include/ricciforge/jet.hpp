#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ricciforge {

/// Truncated multivariate Taylor polynomial in NV variables, total degree at
/// most kMaxOrder. Coefficients are stored as c_alpha = (d^alpha f) / alpha!,
/// ordered by total degree, so truncation to order k is a prefix.
///
/// A jet carries its own valid order: differentiating lowers it by one and a
/// binary operation keeps the smaller of its operands. Constants are exact to
/// every order.
template <int NV>
class Jet {
  static_assert(NV >= 1 && NV <= 4, "Jet supports 1..4 variables");

 public:
  static constexpr int kMaxOrder = 4;
  using Index = std::array<int, NV>;

  struct Table {
    std::vector<Index> alpha;
    std::array<int, kMaxOrder + 2> degree_end{};  // coefficients with degree <= d
    std::vector<std::array<int, NV>> shift;       // index of alpha + e_v, -1 if too high
    std::vector<int> lookup;                      // base-5 code -> index
    struct Triple {
      int a, b, c;
    };
    std::vector<Triple> products;
    std::array<int, kMaxOrder + 2> product_end{};
    std::vector<double> factorial;  // alpha! per coefficient
  };

  static constexpr int size_for(int order) {
    // binom(NV + order, order)
    long num = 1, den = 1;
    for (int i = 1; i <= order; ++i) {
      num *= NV + i;
      den *= i;
    }
    return static_cast<int>(num / den);
  }
  static constexpr int kSize = size_for(kMaxOrder);

  static const Table& table() {
    static const Table t = build_table();
    return t;
  }

  Jet() : order_(kMaxOrder) { c_.fill(0.0); }

  static Jet constant(double v, int order = kMaxOrder) {
    Jet j;
    j.order_ = order;
    j.c_[0] = v;
    return j;
  }

  /// The coordinate function x_axis expanded around the value `at`.
  static Jet variable(int axis, double at, int order = kMaxOrder) {
    Jet j = constant(at, order);
    if (order >= 1) {
      Index e{};
      e[axis] = 1;
      j.c_[index_of(e)] = 1.0;
    }
    return j;
  }

  static int index_of(const Index& a) {
    int code = 0, mul = 1, deg = 0;
    for (int v = 0; v < NV; ++v) {
      if (a[v] < 0) return -1;
      code += a[v] * mul;
      mul *= 5;
      deg += a[v];
    }
    if (deg > kMaxOrder) return -1;
    return table().lookup[code];
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int idx) const { return c_[idx]; }
  double& coeff(int idx) { return c_[idx]; }

  /// Partial derivative d^alpha f at the expansion point.
  double deriv(const Index& a) const {
    int deg = 0;
    for (int v : a) deg += v;
    if (deg > order_) throw std::logic_error("jet order too low for requested derivative");
    const int idx = index_of(a);
    return c_[idx] * table().factorial[idx];
  }

  /// First partial derivative along `axis`, as a jet of one lower order.
  Jet d(int axis) const {
    if (order_ < 1) throw std::logic_error("cannot differentiate an order-0 jet");
    const Table& t = table();
    Jet r;
    r.order_ = order_ - 1;
    const int n = t.degree_end[r.order_];
    for (int i = 0; i < n; ++i) {
      const int s = t.shift[i][axis];
      r.c_[i] = (t.alpha[i][axis] + 1) * c_[s];
    }
    return r;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    if (order < order_) {
      r.order_ = order;
      const Table& t = table();
      for (int i = t.degree_end[order]; i < kSize; ++i) r.c_[i] = 0.0;
    }
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    const int n = table().degree_end[order_];
    for (int i = 0; i < n; ++i) c_[i] += o.c_[i];
    clear_above();
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    const int n = table().degree_end[order_];
    for (int i = 0; i < n; ++i) c_[i] -= o.c_[i];
    clear_above();
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const Table& t = table();
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    const int n = t.product_end[r.order_];
    const auto* p = t.products.data();
    for (int k = 0; k < n; ++k) r.c_[p[k].c] += a.c_[p[k].a] * b.c_[p[k].b];
    return r;
  }

  /// f(a) from the derivatives f, f', ..., f'''' of a univariate function at a.value().
  static Jet compose(const Jet& a, const std::array<double, kMaxOrder + 1>& f) {
    Jet delta = a;
    delta.c_[0] = 0.0;
    const double inv_fact[] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
    Jet r = constant(f[a.order_] * inv_fact[a.order_], a.order_);
    for (int k = a.order_ - 1; k >= 0; --k) {
      r = r * delta;
      r.c_[0] += f[k] * inv_fact[k];
    }
    return r;
  }

 private:
  void clear_above() {
    const int n = table().degree_end[order_];
    for (int i = n; i < kSize; ++i) c_[i] = 0.0;
  }

  static Table build_table() {
    Table t;
    for (int deg = 0; deg <= kMaxOrder; ++deg) {
      Index cur{};
      enumerate(t.alpha, cur, 0, deg);
      t.degree_end[deg] = static_cast<int>(t.alpha.size());
    }
    t.degree_end[kMaxOrder + 1] = static_cast<int>(t.alpha.size());
    int lookup_size = 1;
    for (int v = 0; v < NV; ++v) lookup_size *= 5;
    t.lookup.assign(lookup_size, -1);
    for (int i = 0; i < static_cast<int>(t.alpha.size()); ++i) {
      int code = 0, mul = 1;
      for (int v = 0; v < NV; ++v) {
        code += t.alpha[i][v] * mul;
        mul *= 5;
      }
      t.lookup[code] = i;
    }
    t.shift.resize(t.alpha.size());
    t.factorial.resize(t.alpha.size());
    for (std::size_t i = 0; i < t.alpha.size(); ++i) {
      double f = 1.0;
      for (int v = 0; v < NV; ++v) {
        for (int q = 2; q <= t.alpha[i][v]; ++q) f *= q;
        Index s = t.alpha[i];
        s[v] += 1;
        int deg = 0, code = 0, mul = 1;
        for (int w = 0; w < NV; ++w) {
          deg += s[w];
          code += (s[w] <= 4 ? s[w] : 0) * mul;
          mul *= 5;
        }
        t.shift[i][v] = deg > kMaxOrder ? -1 : t.lookup[code];
      }
      t.factorial[i] = f;
    }
    const int n = static_cast<int>(t.alpha.size());
    for (int deg = 0; deg <= kMaxOrder; ++deg) {
      for (int c = 0; c < n; ++c) {
        int dc = 0;
        for (int v : t.alpha[c]) dc += v;
        if (dc != deg) continue;
        for (int a = 0; a < n; ++a) {
          Index rest{};
          bool ok = true;
          for (int v = 0; v < NV; ++v) {
            rest[v] = t.alpha[c][v] - t.alpha[a][v];
            if (rest[v] < 0) ok = false;
          }
          if (!ok) continue;
          int code = 0, mul = 1;
          for (int v = 0; v < NV; ++v) {
            code += rest[v] * mul;
            mul *= 5;
          }
          t.products.push_back({a, t.lookup[code], c});
        }
      }
      t.product_end[deg] = static_cast<int>(t.products.size());
    }
    t.product_end[kMaxOrder + 1] = static_cast<int>(t.products.size());
    return t;
  }

  static void enumerate(std::vector<Index>& out, Index& cur, int var, int remaining) {
    if (var == NV - 1) {
      cur[var] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[var] = k;
      enumerate(out, cur, var + 1, remaining - k);
    }
  }

  std::array<double, kSize> c_;
  int order_;
};

template <int NV>
Jet<NV> operator+(Jet<NV> a, const Jet<NV>& b) {
  return a += b;
}
template <int NV>
Jet<NV> operator-(Jet<NV> a, const Jet<NV>& b) {
  return a -= b;
}
template <int NV>
Jet<NV> operator+(Jet<NV> a, double s) {
  return a += s;
}
template <int NV>
Jet<NV> operator+(double s, Jet<NV> a) {
  return a += s;
}
template <int NV>
Jet<NV> operator-(Jet<NV> a, double s) {
  return a -= s;
}
template <int NV>
Jet<NV> operator-(double s, const Jet<NV>& a) {
  return (-a) += s;
}
template <int NV>
Jet<NV> operator*(Jet<NV> a, double s) {
  return a *= s;
}
template <int NV>
Jet<NV> operator*(double s, Jet<NV> a) {
  return a *= s;
}
template <int NV>
Jet<NV> operator/(Jet<NV> a, double s) {
  return a *= 1.0 / s;
}

template <int NV>
Jet<NV> reciprocal(const Jet<NV>& a) {
  const double x = a.value();
  const double r = 1.0 / x;
  return Jet<NV>::compose(a, {r, -r * r, 2 * r * r * r, -6 * r * r * r * r, 24 * r * r * r * r * r});
}
template <int NV>
Jet<NV> operator/(const Jet<NV>& a, const Jet<NV>& b) {
  return a * reciprocal(b);
}
template <int NV>
Jet<NV> operator/(double s, const Jet<NV>& b) {
  return reciprocal(b) * s;
}

template <int NV>
Jet<NV> exp(const Jet<NV>& a) {
  const double e = std::exp(a.value());
  return Jet<NV>::compose(a, {e, e, e, e, e});
}
template <int NV>
Jet<NV> log(const Jet<NV>& a) {
  const double r = 1.0 / a.value();
  return Jet<NV>::compose(a, {std::log(a.value()), r, -r * r, 2 * r * r * r, -6 * r * r * r * r});
}
template <int NV>
Jet<NV> pow(const Jet<NV>& a, double p) {
  const double x = a.value();
  std::array<double, 5> f{};
  double coef = 1.0;
  for (int k = 0; k < 5; ++k) {
    f[k] = coef * std::pow(x, p - k);
    coef *= p - k;
  }
  return Jet<NV>::compose(a, f);
}
template <int NV>
Jet<NV> sqrt(const Jet<NV>& a) {
  return pow(a, 0.5);
}
template <int NV>
Jet<NV> sin(const Jet<NV>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Jet<NV>::compose(a, {s, c, -s, -c, s});
}
template <int NV>
Jet<NV> cos(const Jet<NV>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Jet<NV>::compose(a, {c, -s, -c, s, c});
}
template <int NV>
Jet<NV> sinh(const Jet<NV>& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return Jet<NV>::compose(a, {s, c, s, c, s});
}
template <int NV>
Jet<NV> cosh(const Jet<NV>& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return Jet<NV>::compose(a, {c, s, c, s, c});
}

using Jet2 = Jet<2>;

}  // namespace ricciforge
