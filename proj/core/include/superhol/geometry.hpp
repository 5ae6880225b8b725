#ifndef SUPERHOL_GEOMETRY_HPP
#define SUPERHOL_GEOMETRY_HPP

#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "superhol/superfunction.hpp"
#include "superhol/supermatrix.hpp"

namespace superhol {

/// Single global chart R^{n|m}; L base Grassmann generators, L' extension
/// generators. Coordinates are indexed 0..n+m-1, even block first.
struct ChartSpec {
  int even_dim = 0; // n
  int odd_dim = 0;  // m
  int base_gens = 0; // L
  int ext_gens = 0;  // L'

  int coords() const { return even_dim + odd_dim; }
  int coord_parity(int l) const { return l >= even_dim ? 1 : 0; }
  int total_gens() const { return base_gens + ext_gens; }

  /// Coordinate l as a DSL symbol: x<k> scalar variable code or theta index.
  int coord_scalar_var(int l) const { return l + 1; }          // even l
  int coord_theta_index(int l) const { return l - even_dim + 1; } // odd l
};

/// Assignment of Grassmann-valued coordinates: an S-point in coordinates.
struct SPoint {
  ChartSpec chart;
  int gens = 0;
  std::vector<GrassmannElement> coords; // even block then odd block

  static SPoint origin(const ChartSpec& chart, int gens);
  static SPoint from_body(const ChartSpec& chart, int gens, const std::vector<double>& xs);

  void validate() const; // parities and real bodies
  NumericAssignment assignment() const;
  SPoint extended(int new_gens) const;

  friend bool operator==(const SPoint& a, const SPoint& b) {
    return a.gens == b.gens && a.coords == b.coords;
  }
};

/// Matrix of superfunctions with (p|q) row/column grading, right coefficients.
struct SfMatrix {
  int p = 0, q = 0;
  std::vector<SuperFunction> e;

  SfMatrix() = default;
  SfMatrix(int p_, int q_) : p(p_), q(q_), e(std::size_t(p_ + q_) * (p_ + q_)) {}

  static SfMatrix identity(int p, int q);

  int dim() const { return p + q; }
  int row_parity(int r) const { return r >= p ? 1 : 0; }
  const SuperFunction& at(int r, int c) const { return e[r * dim() + c]; }
  SuperFunction& at(int r, int c) { return e[r * dim() + c]; }
  bool is_zero() const;

  SfMatrix& operator+=(const SfMatrix& o);
  SfMatrix& operator-=(const SfMatrix& o);
  friend SfMatrix operator+(SfMatrix a, const SfMatrix& b) { return a += b; }
  friend SfMatrix operator-(SfMatrix a, const SfMatrix& b) { return a -= b; }
};

SfMatrix sfm_mul(const SfMatrix& a, const SfMatrix& b);
SfMatrix sfm_scale(const SfMatrix& a, const Expr& c);
SfMatrix sfm_neg(const SfMatrix& a);

/// Left action of a homogeneous scalar superfunction on an operator matrix:
/// (c . A)^m_k = (-1)^{|c||T^m|} c * A^m_k.
SfMatrix sfm_scalar_op(const SuperFunction& c, const SfMatrix& a);

/// Row-signed derivative along coordinate l: (D_l A)^m_k =
/// (-1)^{|xi^l||T^m|} d_l(A^m_k). This is the derivative compatible with
/// operator composition: D_l(AB) = D_l A B + (-1)^{|xi^l||A|} A D_l B.
SfMatrix sfm_coord_derivative(const SfMatrix& a, const ChartSpec& chart, int l);

SuperMatrix sfm_eval(const SfMatrix& a, const NumericAssignment& at, int gens);
SfMatrix sfm_compose(const SfMatrix& a, const SymbolicAssignment& at);

/// Section in components (right coefficients).
using SfSection = std::vector<SuperFunction>;
SfSection apply_matrix(const SfMatrix& a, const SfSection& z);

/// Local connection data: Gamma_l is the matrix of nabla_{d_l} on the frame,
/// right coefficients: nabla_{d_l} T^k = T^m Gamma_l^m_k.
struct ConnectionSpec {
  ChartSpec chart;
  int p = 0, q = 0;
  std::vector<SfMatrix> gamma; // per coordinate

  static ConnectionSpec flat(const ChartSpec& chart, int p, int q);

  int dim() const { return p + q; }
  int frame_parity(int k) const { return k >= p ? 1 : 0; }
  void validate() const; // evenness of nabla, entrywise

  /// nabla_{d_l} applied to a section: D_l z + Gamma_l z.
  SfSection covariant_derivative(int l, const SfSection& z) const;
};

/// Auxiliary connection on the tangent sheaf: same data with the coordinate
/// frame, so frame parities equal coordinate parities.
using AuxConnectionSpec = ConnectionSpec;
AuxConnectionSpec flat_aux(const ChartSpec& chart);

/// Converts a left coefficient (value written as coeff * T^m) to the stored
/// right coefficient: (-1)^{|T^m||coeff|} per homogeneous part.
SuperFunction sf_left_to_right(const SuperFunction& left, int frame_parity);

/// Frame matrix of R(d_i, d_j) from the curvature of the connection
/// applied to frame sections, with [d_i, d_j] = 0.
SfMatrix curvature_frame(const ConnectionSpec& conn, int i, int j);

/// All coordinate pairs, computed once.
class CurvatureTable {
public:
  explicit CurvatureTable(const ConnectionSpec& conn);
  const SfMatrix& at(int i, int j) const;
  int coords() const { return coords_; }

private:
  int coords_;
  std::vector<SfMatrix> table_;
};

/// Domain variable of a morphism: an even scalar variable or a theta symbol.
struct DomainVar {
  int parity = 0;
  int scalar_var = 0; // parity 0
  int theta_idx = 0;  // parity 1, 1-based
};

/// Differential matrix d phi^i_k = (-1)^{(|xi^k|+|zeta^i|)|zeta^i|}
/// d(phi(zeta^i))/d(xi^k) of a morphism given by coordinate pullbacks.
std::vector<std::vector<SuperFunction>> differential_matrix(
    const std::vector<SuperFunction>& components, const std::vector<int>& target_parity,
    const std::vector<DomainVar>& domain);

/// Curvature-type tensor given by its frame matrices Q(d_i, d_j) and parity.
struct CurvTensor {
  int parity = 0;
  int coords = 0;
  std::vector<SfMatrix> table; // coords x coords

  const SfMatrix& at(int i, int j) const { return table[i * coords + j]; }
  SfMatrix& at(int i, int j) { return table[i * coords + j]; }
};

CurvTensor curvature_tensor(const ConnectionSpec& conn);

/// First covariant derivative of a curvature-type tensor in a coordinate
/// direction, with the auxiliary connection acting on the arguments.
CurvTensor cov_deriv_tensor(const ConnectionSpec& conn, const AuxConnectionSpec& aux,
                            const CurvTensor& q, int dir);

/// The paper-defined first/second covariant derivative of the curvature for
/// up to two coordinate directions (dirs beyond two are unsupported).
SfMatrix cov_deriv_curvature(const ConnectionSpec& conn, const AuxConnectionSpec& aux,
                             const std::vector<int>& dirs, int u, int v);

/// Tangent vector along a point, right-coefficient components per coordinate.
struct TangentVector {
  std::vector<GrassmannElement> comp;
};

/// Contraction M = Q(u, v) at evaluated frame matrices, with the coefficient
/// crossing signs of right multilinearity.
SuperMatrix contract_two_slots(const std::vector<SuperMatrix>& table, int coords,
                               const ChartSpec& chart, const TangentVector& u,
                               const TangentVector& v, int p, int q, int gens);

/// A connection, possibly wrapped by a gauge transformation V (even,
/// pointwise body-invertible). Gauge towers compose symbolically.
struct GaugedConnection {
  ConnectionSpec base;
  SfMatrix V;
};
using Connection = std::variant<ConnectionSpec, GaugedConnection>;

const ConnectionSpec& connection_base(const Connection& c);
const ChartSpec& connection_chart(const Connection& c);
int connection_p(const Connection& c);
int connection_q(const Connection& c);

/// Gamma_l evaluated at a point; for gauged connections this is
/// V Gamma_l V^-1 - (D_l V) V^-1 evaluated there.
SuperMatrix eval_gamma(const Connection& c, int l, const NumericAssignment& at, int gens);

/// R(d_i, d_j) evaluated at a point; gauge conjugates tensorially.
SuperMatrix eval_curvature(const Connection& c, const CurvatureTable& table, int i, int j,
                           const NumericAssignment& at, int gens);

Connection gauge_transform(const Connection& c, const SfMatrix& V);

} // namespace superhol

#endif
