#ifndef SUPERHOL_SUPERMATRIX_HPP
#define SUPERHOL_SUPERMATRIX_HPP

#include <optional>
#include <vector>

#include "superhol/grassmann.hpp"

namespace superhol {

/// (p|q)-graded square matrix over a Grassmann algebra. Rows and columns
/// 0..p-1 are even, p..p+q-1 odd. Entries are right coefficients: the matrix
/// of a superlinear map X = T^k X^k -> T^m (A^m_k X^k), so composition is the
/// plain matrix product.
class SuperMatrix {
public:
  SuperMatrix() : p_(0), q_(0), gens_(0) {}
  SuperMatrix(int p, int q, int gens);

  static SuperMatrix identity(int p, int q, int gens);

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  int gens() const { return gens_; }

  int row_parity(int i) const { return i >= p_ ? 1 : 0; }

  const GrassmannElement& at(int r, int c) const { return e_[r * dim() + c]; }
  GrassmannElement& at(int r, int c) { return e_[r * dim() + c]; }

  bool is_zero() const;
  /// Matrix parity: s with every nonzero entry (r,c) of parity s+|r|+|c|.
  std::optional<int> parity() const;
  bool is_even() const { auto s = parity(); return s && *s == 0; }

  /// All entries have zero soul and the even/odd block pattern of an even
  /// matrix reduces to its real body.
  std::vector<double> body() const; // row-major (p+q)^2

  double max_abs_coeff() const;
  double l1_operator_norm() const; // max row sum of entry l1 norms

  SuperMatrix& operator+=(const SuperMatrix& o);
  SuperMatrix& operator-=(const SuperMatrix& o);
  SuperMatrix& operator*=(double s);

  friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
  friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
  friend SuperMatrix operator*(SuperMatrix a, double s) { return a *= s; }
  friend SuperMatrix operator*(double s, SuperMatrix a) { return a *= s; }
  friend SuperMatrix operator-(SuperMatrix a) { return a *= -1.0; }

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.gens_ == b.gens_ && a.e_ == b.e_;
  }

private:
  int p_, q_, gens_;
  std::vector<GrassmannElement> e_;
};

SuperMatrix sm_mul(const SuperMatrix& a, const SuperMatrix& b);

/// Left action of a scalar on the operator: (c . A)^m_k = (-1)^{|c||T^m|} c A^m_k.
/// The scalar must be homogeneous of the given parity.
SuperMatrix sm_scalar_op(const GrassmannElement& c, int c_parity, const SuperMatrix& a);

/// Plain entrywise product c * A^m_k (the scalar acting on coefficients).
SuperMatrix sm_scalar_plain(const GrassmannElement& c, const SuperMatrix& a);

/// Supercommutator [X,Y] = XY - (-1)^{|X||Y|} YX of homogeneous matrices.
SuperMatrix sm_supercommutator(const SuperMatrix& x, const SuperMatrix& y);

/// Inverse of an even matrix with invertible body: body inverse followed by
/// the finite Neumann series in the nilpotent correction.
SuperMatrix sm_inverse(const SuperMatrix& a);

/// Exponential of an even matrix by scaling-and-squaring with a truncated
/// series; the nilpotent directions terminate exactly.
SuperMatrix sm_exp(const SuperMatrix& a);

/// Ordinary (non-super) trace: sum of the diagonal entries.
GrassmannElement sm_trace(const SuperMatrix& a);

SuperMatrix sm_extend(const SuperMatrix& a, int new_gens);

/// Entrywise algebra morphism on the Grassmann coefficients.
SuperMatrix sm_substitute(const SuperMatrix& a,
                          const std::vector<GrassmannElement>& images);

SuperMatrix sm_from_body(int p, int q, int gens, const std::vector<double>& body);

} // namespace superhol

#endif
