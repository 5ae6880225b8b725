#include "superhol/supermatrix.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace superhol {

SuperMatrix::SuperMatrix(int p, int q, int gens) : p_(p), q_(q), gens_(gens) {
  if (p < 0 || q < 0 || p + q == 0)
    fail(ErrorCode::dimension_mismatch, "invalid matrix rank");
  e_.assign(std::size_t(dim()) * dim(), GrassmannElement(gens));
}

SuperMatrix SuperMatrix::identity(int p, int q, int gens) {
  SuperMatrix m(p, q, gens);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = GrassmannElement(gens, 1.0);
  return m;
}

bool SuperMatrix::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

std::optional<int> SuperMatrix::parity() const {
  int s = -1;
  for (int r = 0; r < dim(); ++r)
    for (int c = 0; c < dim(); ++c) {
      const auto& e = at(r, c);
      if (e.is_zero()) continue;
      auto pe = e.parity();
      if (!pe) return std::nullopt;
      int se = (*pe + row_parity(r) + row_parity(c)) & 1;
      if (s < 0)
        s = se;
      else if (s != se)
        return std::nullopt;
    }
  return s < 0 ? 0 : s;
}

std::vector<double> SuperMatrix::body() const {
  std::vector<double> b(std::size_t(dim()) * dim());
  for (int r = 0; r < dim(); ++r)
    for (int c = 0; c < dim(); ++c) b[r * dim() + c] = at(r, c).body();
  return b;
}

double SuperMatrix::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& e : e_) m = std::max(m, e.max_abs_coeff());
  return m;
}

double SuperMatrix::l1_operator_norm() const {
  double m = 0.0;
  for (int r = 0; r < dim(); ++r) {
    double s = 0.0;
    for (int c = 0; c < dim(); ++c) s += at(r, c).l1_norm();
    m = std::max(m, s);
  }
  return m;
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& o) {
  if (p_ != o.p_ || q_ != o.q_ || gens_ != o.gens_)
    fail(ErrorCode::dimension_mismatch, "matrix shape mismatch in sum");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& o) {
  if (p_ != o.p_ || q_ != o.q_ || gens_ != o.gens_)
    fail(ErrorCode::dimension_mismatch, "matrix shape mismatch in difference");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

SuperMatrix& SuperMatrix::operator*=(double s) {
  for (auto& e : e_) e *= s;
  return *this;
}

SuperMatrix sm_mul(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.p() != b.p() || a.q() != b.q() || a.gens() != b.gens())
    fail(ErrorCode::dimension_mismatch, "matrix shape mismatch in product");
  SuperMatrix out(a.p(), a.q(), a.gens());
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const auto& ark = a.at(r, k);
      if (ark.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        const auto& bkc = b.at(k, c);
        if (bkc.is_zero()) continue;
        out.at(r, c) += gr_mul(ark, bkc);
      }
    }
  return out;
}

SuperMatrix sm_scalar_op(const GrassmannElement& c, int c_parity, const SuperMatrix& a) {
  SuperMatrix out(a.p(), a.q(), a.gens());
  for (int r = 0; r < a.dim(); ++r) {
    double sign = (c_parity && a.row_parity(r)) ? -1.0 : 1.0;
    for (int col = 0; col < a.dim(); ++col) {
      if (a.at(r, col).is_zero()) continue;
      out.at(r, col) = sign * gr_mul(c, a.at(r, col));
    }
  }
  return out;
}

SuperMatrix sm_scalar_plain(const GrassmannElement& c, const SuperMatrix& a) {
  SuperMatrix out(a.p(), a.q(), a.gens());
  for (int r = 0; r < a.dim(); ++r)
    for (int col = 0; col < a.dim(); ++col)
      if (!a.at(r, col).is_zero()) out.at(r, col) = gr_mul(c, a.at(r, col));
  return out;
}

SuperMatrix sm_supercommutator(const SuperMatrix& x, const SuperMatrix& y) {
  auto px = x.parity(), py = y.parity();
  if (!px || !py)
    fail(ErrorCode::parity_violation, "supercommutator needs homogeneous matrices");
  SuperMatrix xy = sm_mul(x, y);
  SuperMatrix yx = sm_mul(y, x);
  return (*px && *py) ? xy + yx : xy - yx;
}

SuperMatrix sm_from_body(int p, int q, int gens, const std::vector<double>& body) {
  SuperMatrix m(p, q, gens);
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      m.at(r, c) = GrassmannElement(gens, body[r * m.dim() + c]);
  return m;
}

SuperMatrix sm_inverse(const SuperMatrix& a) {
  if (!a.is_even())
    fail(ErrorCode::parity_violation, "inverse defined for even matrices");
  const int n = a.dim();
  Eigen::MatrixXd b(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) b(r, c) = a.at(r, c).body();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (!lu.isInvertible())
    fail(ErrorCode::not_invertible, "matrix body is singular");
  Eigen::MatrixXd binv = lu.inverse();

  std::vector<double> binv_flat(std::size_t(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) binv_flat[r * n + c] = binv(r, c);
  SuperMatrix binv_m = sm_from_body(a.p(), a.q(), a.gens(), binv_flat);

  // a = B (I + N) with N = B^-1 soul(a) nilpotent
  SuperMatrix soul = a;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) soul.at(r, c) = a.at(r, c).soul();
  SuperMatrix nil = sm_mul(binv_m, soul);

  SuperMatrix acc = SuperMatrix::identity(a.p(), a.q(), a.gens());
  SuperMatrix pow = acc;
  for (int k = 1; k <= a.gens(); ++k) {
    pow = sm_mul(pow, nil);
    if (pow.is_zero()) break;
    acc += ((k & 1) ? -1.0 : 1.0) * pow;
  }
  return sm_mul(acc, binv_m);
}

SuperMatrix sm_exp(const SuperMatrix& a) {
  if (!a.is_even())
    fail(ErrorCode::parity_violation, "exponential defined for even matrices");
  double norm = a.l1_operator_norm();
  int s = 0;
  while (norm > 0.5 && s < 64) {
    norm *= 0.5;
    ++s;
  }
  SuperMatrix x = a * std::ldexp(1.0, -s);
  SuperMatrix acc = SuperMatrix::identity(a.p(), a.q(), a.gens());
  SuperMatrix term = acc;
  for (int k = 1; k <= 24; ++k) {
    term = sm_mul(term, x) * (1.0 / k);
    if (term.is_zero()) break;
    acc += term;
    if (term.max_abs_coeff() < 1e-20 * std::max(1.0, acc.max_abs_coeff())) break;
  }
  for (int i = 0; i < s; ++i) acc = sm_mul(acc, acc);
  return acc;
}

GrassmannElement sm_trace(const SuperMatrix& a) {
  GrassmannElement t(a.gens());
  for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
  return t;
}

SuperMatrix sm_extend(const SuperMatrix& a, int new_gens) {
  SuperMatrix out(a.p(), a.q(), new_gens);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out.at(r, c) = gr_extend(a.at(r, c), new_gens);
  return out;
}

SuperMatrix sm_substitute(const SuperMatrix& a,
                          const std::vector<GrassmannElement>& images) {
  int out_gens = a.gens();
  for (const auto& im : images) out_gens = std::max(out_gens, im.gens());
  SuperMatrix out(a.p(), a.q(), out_gens);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      out.at(r, c) = gr_extend(gr_substitute(a.at(r, c), images), out_gens);
  return out;
}

} // namespace superhol
