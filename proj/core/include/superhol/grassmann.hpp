#ifndef SUPERHOL_GRASSMANN_HPP
#define SUPERHOL_GRASSMANN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superhol/error.hpp"

namespace superhol {

using Mask = std::uint32_t;

/// Parity of a monomial index set.
inline int mask_parity(Mask m) { return __builtin_popcount(m) & 1; }

/// Sign of sorting the concatenation of two ordered monomials: the parity of
/// the number of generator pairs (i in a, j in b) with i > j.
int reorder_sign(Mask a, Mask b);

/// Element of the real Grassmann algebra on `gens` anticommuting generators,
/// stored densely: coeff[m] multiplies the ordered monomial with index set m.
class GrassmannElement {
public:
  GrassmannElement() : gens_(0), c_(1, 0.0) {}
  explicit GrassmannElement(int gens);
  GrassmannElement(int gens, double body);

  static GrassmannElement monomial(int gens, Mask m, double coeff = 1.0);
  static GrassmannElement generator(int gens, int j); // 1-based

  int gens() const { return gens_; }
  std::size_t size() const { return c_.size(); }

  double operator[](Mask m) const { return c_[m]; }
  double& operator[](Mask m) { return c_[m]; }

  double body() const { return c_[0]; }
  GrassmannElement soul() const;

  bool is_zero() const;
  /// 0 (even), 1 (odd), or nullopt for mixed/zero-parity-undefined.
  /// Zero elements report even.
  std::optional<int> parity() const;

  /// Smallest k with (this)^k == 0; only defined for elements with zero body.
  int nilpotency_index() const;

  double max_abs_coeff() const;
  double l1_norm() const;

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  GrassmannElement& operator*=(double s);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, double s) { return a *= s; }
  friend GrassmannElement operator*(double s, GrassmannElement a) { return a *= s; }
  friend GrassmannElement operator-(GrassmannElement a) { return a *= -1.0; }

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.gens_ == b.gens_ && a.c_ == b.c_;
  }

private:
  int gens_;
  std::vector<double> c_;
};

/// Grassmann product with the anticommutation sign rule.
GrassmannElement gr_mul(const GrassmannElement& a, const GrassmannElement& b);

/// Splits a = body + soul.
std::pair<double, GrassmannElement> gr_body_soul(const GrassmannElement& a);

/// Left derivative with respect to generator j (1-based).
GrassmannElement gr_eta_derivative(const GrassmannElement& a, int j);

/// Inverse via body inverse and the finite Neumann series in the soul.
GrassmannElement gr_inverse(const GrassmannElement& a);

/// Widens an element to an algebra with more generators (an embedding).
GrassmannElement gr_extend(const GrassmannElement& a, int new_gens);

/// Applies the algebra morphism sending generator j to images[j-1].
/// Every image must be odd; all images share one target algebra.
GrassmannElement gr_substitute(const GrassmannElement& a,
                               const std::vector<GrassmannElement>& images);

/// Canonical text form: signed monomials sorted by (cardinality, lexicographic
/// index set), e.g. "3 - 2*eta1*eta2". With digits17, coefficients are printed
/// with 17 significant digits (used in JSON export).
std::string gr_to_string(const GrassmannElement& a, bool digits17 = false);

/// Shortest round-trip decimal form of a double ("2", "0.5", "1e-05", ...).
std::string format_double(double v);
/// 17-significant-digit form of a double.
std::string format_double17(double v);

} // namespace superhol

#endif
