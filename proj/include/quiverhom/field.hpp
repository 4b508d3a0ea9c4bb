// Exact field arithmetic (prime fields and rationals) and small dense exact
// linear algebra: reduced row echelon form, kernels, solving, rank.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

// Prime field F_p with a runtime modulus. Elements are canonical residues in
// [0, p). p is expected to be prime; inversion fails loudly otherwise.
struct Fp {
  std::int64_t p = 101;
  using Elem = std::int64_t;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(std::int64_t n) const {
    Elem r = n % p;
    return r < 0 ? r + p : r;
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem inv(Elem a) const {
    // extended Euclid
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw std::domain_error("Fp::inv: element not invertible mod " + std::to_string(p));
    return t < 0 ? t + p : t;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  std::string to_string(Elem a) const { return std::to_string(a); }
};

// Field of rationals with arbitrary-precision exact arithmetic.
struct QQ {
  using Elem = boost::multiprecision::cpp_rational;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t n) const { return n; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("QQ::inv: division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }
  bool is_zero(const Elem& a) const { return a == 0; }
  std::string to_string(const Elem& a) const { return a.str(); }

 private:
  const Elem& inv_guard(const Elem& b) const {
    if (b == 0) throw std::domain_error("QQ::div: division by zero");
    return b;
  }
};

// Dense row-major matrix over a field F. Rows/cols may be zero.
template <class F>
struct Mat {
  using Elem = typename F::Elem;
  F f;
  int rows = 0, cols = 0;
  std::vector<Elem> a;  // rows*cols, row-major

  Mat() = default;
  Mat(F field, int r, int c) : f(field), rows(r), cols(c), a(static_cast<size_t>(r) * c, field.zero()) {}

  Elem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Elem& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(F field, int n) {
    Mat m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  Mat mul(const Mat& o) const {
    if (cols != o.rows) throw std::logic_error("Mat::mul: shape mismatch");
    Mat r(f, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Elem& aik = at(i, k);
        if (f.is_zero(aik)) continue;
        for (int j = 0; j < o.cols; ++j) {
          if (f.is_zero(o.at(k, j))) continue;
          r.at(i, j) = f.add(r.at(i, j), f.mul(aik, o.at(k, j)));
        }
      }
    return r;
  }

  // Apply to a column vector.
  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::logic_error("Mat::apply: shape mismatch");
    std::vector<Elem> r(rows, f.zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!f.is_zero(at(i, j)) && !f.is_zero(v[j])) r[i] = f.add(r[i], f.mul(at(i, j), v[j]));
    return r;
  }

  // Stack rows of `o` below this matrix.
  Mat vstack(const Mat& o) const {
    if (cols != o.cols) throw std::logic_error("Mat::vstack: shape mismatch");
    Mat r(f, rows + o.rows, cols);
    r.a = a;
    r.a.insert(r.a.end(), o.a.begin(), o.a.end());
    return r;
  }
};

// In-place reduced row echelon form. Returns the pivot column of each pivot
// row in order; rank = pivots.size(). Deterministic: first nonzero entry in
// column order is the pivot.
template <class F>
std::vector<int> rref(Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.f.is_zero(m.at(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    auto piv = m.f.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.f.mul(m.at(r, j), piv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.f.is_zero(m.at(i, c))) continue;
      auto factor = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.f.sub(m.at(i, j), m.f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(Mat<F> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right kernel {x : M x = 0}, one column vector per basis
// element, in deterministic (free-column) order.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(Mat<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename F::Elem> v(m.cols, m.f.zero());
    v[c] = m.f.one();
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m.f.neg(m.at(static_cast<int>(i), c));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve M x = b. Returns empty optional-style flag via bool. Deterministic
// particular solution with free variables set to zero.
template <class F>
bool solve(const Mat<F>& m, const std::vector<typename F::Elem>& b, std::vector<typename F::Elem>& x_out) {
  Mat<F> aug(m.f, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  for (int c : pivots)
    if (c == m.cols) return false;  // inconsistent row 0 .. 0 | 1
  std::vector<typename F::Elem> x(m.cols, m.f.zero());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), m.cols);
  x_out = std::move(x);
  return true;
}

// Row space membership: is v in the span of the rows of m?
template <class F>
bool in_row_span(Mat<F> m, const std::vector<typename F::Elem>& v) {
  int r0 = rank(m);
  Mat<F> ext(m.f, m.rows + 1, m.cols);
  ext.a = m.a;
  ext.a.insert(ext.a.end(), v.begin(), v.end());
  return rank(ext) == r0;
}

}  // namespace qh
