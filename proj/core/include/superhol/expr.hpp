#ifndef SUPERHOL_EXPR_HPP
#define SUPERHOL_EXPR_HPP

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "superhol/grassmann.hpp"

namespace superhol {

/// Variable codes of the scalar expression language: 1..n are x1..xn,
/// kVarT is the curve parameter t, kVarS the homotopy parameter s.
constexpr int kVarT = -1;
constexpr int kVarS = -2;

std::string var_name(int code);

enum class Func { sin, cos, exp, tanh, sqrt };

const char* func_name(Func f);

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable scalar expression tree over even variables. Built only through
/// the smart constructors below, which keep a canonical form: flattened
/// sums/products, folded constants (product constants leading, sum constants
/// trailing), and no zero/one identities.
struct ExprNode {
  enum class Kind { constant, var, add, mul, pow, func, div };
  Kind kind;
  double value = 0.0;     // constant
  int var = 0;            // var
  int ipow = 0;           // pow exponent (integer, possibly negative)
  Func fn = Func::sin;    // func
  double divisor = 1.0;   // div (positive literal)
  std::vector<Expr> kids; // add/mul: >= 2, pow/func/div: 1
};

Expr ex_const(double v);
Expr ex_var(int code);
Expr ex_add(std::vector<Expr> kids);
Expr ex_add(const Expr& a, const Expr& b);
Expr ex_sub(const Expr& a, const Expr& b);
Expr ex_mul(std::vector<Expr> kids);
Expr ex_mul(const Expr& a, const Expr& b);
Expr ex_neg(const Expr& a);
Expr ex_pow(const Expr& base, int k);
Expr ex_func(Func f, const Expr& arg);
Expr ex_div(const Expr& num, double divisor);

bool ex_is_zero(const Expr& e);
bool ex_is_const(const Expr& e);
bool expr_equal(const Expr& a, const Expr& b);
void collect_vars(const Expr& e, std::set<int>& out);

/// Rendering with the precedence of the surface grammar; reparsing the result
/// reproduces the tree exactly.
std::string ex_to_string(const Expr& e);

using RealEnv = std::function<double(int var)>;
double ex_eval(const Expr& e, const RealEnv& env);

/// Evaluation in a Grassmann algebra. Every variable value must be even with
/// real body; unary functions act through their finite Taylor series along
/// the nilpotent soul of the argument.
using GrassmannEnv = std::function<const GrassmannElement&(int var)>;
GrassmannElement ex_eval_gr(const Expr& e, const GrassmannEnv& env, int gens);

/// Symbolic partial derivative; results are memoized in a guarded cache.
Expr ex_diff(const Expr& e, int var);

/// Simultaneous substitution of variables by expressions.
Expr ex_subst(const Expr& e, const std::map<int, Expr>& repl);

/// Taylor coefficients c_k = f^(k)(a)/k!, k = 0..order.
std::vector<double> func_jet(Func f, double a, int order);

} // namespace superhol

#endif
