#ifndef SUPERHOL_SUPERFUNCTION_HPP
#define SUPERHOL_SUPERFUNCTION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superhol/expr.hpp"
#include "superhol/grassmann.hpp"

namespace superhol {

/// Superfunction in canonical form: sum over pairs (eta index set I, theta
/// index set J) of c_{I,J}(x,t,s) * eta^I * theta^J with the fixed symbol
/// ordering eta1 < ... < etaG < th1 < ... < thm. Keys map (theta mask, eta
/// mask) -> scalar coefficient tree; zero coefficients are never stored.
class SuperFunction {
public:
  using Key = std::pair<Mask, Mask>; // (theta mask, eta mask)
  using Terms = std::map<Key, Expr>;

  SuperFunction() = default;

  static SuperFunction zero() { return {}; }
  static SuperFunction constant(double v);
  static SuperFunction scalar(Expr e);
  static SuperFunction monomial(Mask theta, Mask eta, Expr coeff);
  static SuperFunction from_element(const GrassmannElement& e);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Expr coeff(Mask theta, Mask eta) const;
  void set_coeff(Mask theta, Mask eta, Expr e);

  /// 0/1 if all terms share one parity (zero counts as even), else nullopt.
  std::optional<int> parity() const;
  bool is_even() const { auto p = parity(); return p && *p == 0; }
  bool is_odd() const { auto p = parity(); return p && *p == 1; }

  std::pair<SuperFunction, SuperFunction> parity_split() const; // (even, odd)

  /// True when no coefficient mentions any scalar variable.
  bool is_constant() const;

  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);

  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }

  friend bool operator==(const SuperFunction& a, const SuperFunction& b);

private:
  Terms terms_;
};

SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b);
SuperFunction sf_scale(const SuperFunction& a, const Expr& c);
SuperFunction sf_scale(const SuperFunction& a, double c);
SuperFunction sf_neg(const SuperFunction& a);

/// Integer power; an identically vanishing odd power reports through `warned`.
SuperFunction sf_pow(const SuperFunction& a, int k, std::string* warning = nullptr);

/// Unary function of a superfunction: finite Taylor expansion of f around the
/// pure-scalar part along the nilpotent remainder.
SuperFunction sf_func(Func f, const SuperFunction& a);

/// Left superderivative. var: scalar variable code, or use the theta/eta forms.
SuperFunction sf_partial(const SuperFunction& f, int var);
SuperFunction sf_partial_theta(const SuperFunction& f, int j); // 1-based
SuperFunction sf_partial_eta(const SuperFunction& f, int j);   // 1-based

/// Substitution of a scalar variable by a scalar expression in every
/// coefficient.
SuperFunction sf_subst_scalar(const SuperFunction& f, int var, const Expr& repl);

/// Assignment for pullbacks/composition. Even variables map to even values,
/// theta symbols to odd values; eta generators map to themselves.
struct NumericAssignment {
  int gens = 0;
  std::map<int, GrassmannElement> even;    // var code -> even element
  std::vector<GrassmannElement> theta;     // per theta index, odd element
};

/// Taylor-correct evaluation into the Grassmann algebra.
GrassmannElement sf_eval(const SuperFunction& f, const NumericAssignment& a);

/// Evaluation of a purely scalar-coefficient function at real variable values.
GrassmannElement sf_eval_real_vars(const SuperFunction& f, const RealEnv& env, int gens);

struct SymbolicAssignment {
  std::map<int, SuperFunction> even;   // var code -> even superfunction
  std::vector<SuperFunction> theta;    // per theta index, odd superfunction
};

/// Symbolic composition: coefficients are expanded by the finite multivariate
/// Taylor series around the pure-scalar parts of the even images; theta
/// monomials are substituted multiplicatively. Unassigned variables persist.
SuperFunction sf_compose(const SuperFunction& f, const SymbolicAssignment& a);

/// Canonical text form; parse_superfunction(sf_print(f)) == f.
std::string sf_print(const SuperFunction& f);

/// A constant superfunction (no scalar variables, no theta content) as a
/// Grassmann element on `gens` generators.
GrassmannElement sf_to_element(const SuperFunction& f, int gens);

/// Maximum |difference of coefficients| over shared keys, with each scalar
/// coefficient evaluated through `env`. Used by approximate-identity tests.
double sf_coeff_distance(const SuperFunction& a, const SuperFunction& b, const RealEnv& env);

} // namespace superhol

#endif
