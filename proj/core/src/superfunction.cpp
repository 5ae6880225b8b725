#include "superhol/superfunction.hpp"

#include <algorithm>
#include <cmath>

namespace superhol {

SuperFunction SuperFunction::constant(double v) {
  return scalar(ex_const(v));
}

SuperFunction SuperFunction::scalar(Expr e) {
  SuperFunction f;
  if (!ex_is_zero(e)) f.terms_[{0, 0}] = std::move(e);
  return f;
}

SuperFunction SuperFunction::monomial(Mask theta, Mask eta, Expr coeff) {
  SuperFunction f;
  if (!ex_is_zero(coeff)) f.terms_[{theta, eta}] = std::move(coeff);
  return f;
}

SuperFunction SuperFunction::from_element(const GrassmannElement& e) {
  SuperFunction f;
  for (Mask m = 0; m < e.size(); ++m)
    if (e[m] != 0.0) f.terms_[{0, m}] = ex_const(e[m]);
  return f;
}

Expr SuperFunction::coeff(Mask theta, Mask eta) const {
  auto it = terms_.find({theta, eta});
  return it == terms_.end() ? ex_const(0.0) : it->second;
}

void SuperFunction::set_coeff(Mask theta, Mask eta, Expr e) {
  if (ex_is_zero(e))
    terms_.erase({theta, eta});
  else
    terms_[{theta, eta}] = std::move(e);
}

std::optional<int> SuperFunction::parity() const {
  int p = -1;
  for (const auto& [key, c] : terms_) {
    int q = (mask_parity(key.first) + mask_parity(key.second)) & 1;
    if (p < 0)
      p = q;
    else if (p != q)
      return std::nullopt;
  }
  return p < 0 ? 0 : p;
}

std::pair<SuperFunction, SuperFunction> SuperFunction::parity_split() const {
  SuperFunction even, odd;
  for (const auto& [key, c] : terms_) {
    int q = (mask_parity(key.first) + mask_parity(key.second)) & 1;
    (q ? odd : even).terms_[key] = c;
  }
  return {even, odd};
}

bool SuperFunction::is_constant() const {
  std::set<int> vars;
  for (const auto& [key, c] : terms_) collect_vars(c, vars);
  return vars.empty();
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  for (const auto& [key, c] : o.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_[key] = c;
    } else {
      Expr s = ex_add(it->second, c);
      if (ex_is_zero(s))
        terms_.erase(it);
      else
        it->second = s;
    }
  }
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) {
  return *this += sf_neg(o);
}

bool operator==(const SuperFunction& a, const SuperFunction& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!expr_equal(ia->second, ib->second)) return false;
  }
  return true;
}

SuperFunction sf_neg(const SuperFunction& a) { return sf_scale(a, -1.0); }

SuperFunction sf_scale(const SuperFunction& a, const Expr& c) {
  SuperFunction out;
  if (ex_is_zero(c)) return out;
  for (const auto& [key, e] : a.terms()) out.set_coeff(key.first, key.second, ex_mul(c, e));
  return out;
}

SuperFunction sf_scale(const SuperFunction& a, double c) {
  return sf_scale(a, ex_const(c));
}

SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b) {
  SuperFunction out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      Mask th_a = ka.first, eta_a = ka.second;
      Mask th_b = kb.first, eta_b = kb.second;
      if ((th_a & th_b) || (eta_a & eta_b)) continue;
      // eta^Ia th^Ja * eta^Ib th^Jb: th^Ja crosses eta^Ib, then both merges
      int sign = 1;
      if (mask_parity(th_a) && mask_parity(eta_b)) sign = -sign;
      sign *= reorder_sign(eta_a, eta_b);
      sign *= reorder_sign(th_a, th_b);
      Expr c = ex_mul(ca, cb);
      if (sign < 0) c = ex_neg(c);
      SuperFunction t;
      t.set_coeff(th_a | th_b, eta_a | eta_b, c);
      out += t;
    }
  }
  return out;
}

SuperFunction sf_pow(const SuperFunction& a, int k, std::string* warning) {
  if (k < 0) fail(ErrorCode::parse_error, "negative powers are not in the grammar");
  if (k == 0) return SuperFunction::constant(1.0);
  if (k >= 2 && a.is_odd() && !a.is_zero()) {
    if (warning) *warning = "odd quantity raised to power >= 2 is identically zero";
    return SuperFunction::zero();
  }
  SuperFunction out = a;
  for (int i = 1; i < k; ++i) out = sf_mul(out, a);
  return out;
}

namespace {

// d^k f / du^k expressed at the argument `base`
Expr func_derivative_at(Func f, const Expr& base, int k) {
  switch (f) {
    case Func::sin:
    case Func::cos: {
      int phase = (f == Func::sin ? k : k + 1) & 3;
      switch (phase) {
        case 0: return ex_func(Func::sin, base);
        case 1: return ex_func(Func::cos, base);
        case 2: return ex_neg(ex_func(Func::sin, base));
        default: return ex_neg(ex_func(Func::cos, base));
      }
    }
    case Func::exp:
      return ex_func(Func::exp, base);
    case Func::tanh: {
      // P_0(y) = y, P_{k+1} = (1 - y^2) P_k'(y), y = tanh(base)
      std::vector<double> poly{0.0, 1.0};
      for (int i = 0; i < k; ++i) {
        std::vector<double> d(poly.size() >= 1 ? poly.size() - 1 : 0, 0.0);
        for (std::size_t j = 1; j < poly.size(); ++j) d[j - 1] = poly[j] * double(j);
        std::vector<double> next(d.size() + 2, 0.0);
        for (std::size_t j = 0; j < d.size(); ++j) {
          next[j] += d[j];
          next[j + 2] -= d[j];
        }
        poly = std::move(next);
      }
      Expr y = ex_func(Func::tanh, base);
      std::vector<Expr> sum;
      for (std::size_t j = 0; j < poly.size(); ++j)
        if (poly[j] != 0.0) sum.push_back(ex_mul(ex_const(poly[j]), ex_pow(y, int(j))));
      return ex_add(std::move(sum));
    }
    case Func::sqrt: {
      if (k == 0) return ex_func(Func::sqrt, base);
      double a = 1.0;
      for (int i = 0; i < k; ++i) a *= 0.5 - double(i);
      return ex_mul(ex_const(a), ex_pow(ex_func(Func::sqrt, base), 1 - 2 * k));
    }
  }
  return ex_const(0.0);
}

} // namespace

SuperFunction sf_func(Func f, const SuperFunction& a) {
  Expr base = a.coeff(0, 0);
  SuperFunction nil = a;
  nil.set_coeff(0, 0, ex_const(0.0));
  if (nil.is_zero()) return SuperFunction::scalar(ex_func(f, base));
  // finite Taylor: f(base + nil) = sum_k d^k f(base)/k! * nil^k
  SuperFunction out = SuperFunction::scalar(ex_func(f, base));
  SuperFunction pw = nil;
  double fact = 1.0;
  for (int k = 1; !pw.is_zero(); ++k) {
    fact *= k;
    out += sf_scale(pw, ex_div(func_derivative_at(f, base, k), fact));
    pw = sf_mul(pw, nil);
    if (k > 64) fail(ErrorCode::numeric_failure, "nilpotent power failed to vanish");
  }
  return out;
}

SuperFunction sf_partial(const SuperFunction& f, int var) {
  SuperFunction out;
  for (const auto& [key, c] : f.terms()) {
    Expr d = ex_diff(c, var);
    if (!ex_is_zero(d)) out += SuperFunction::monomial(key.first, key.second, d);
  }
  return out;
}

SuperFunction sf_partial_theta(const SuperFunction& f, int j) {
  if (j < 1) fail(ErrorCode::index_out_of_range, "theta index");
  const Mask bit = Mask(1) << (j - 1);
  SuperFunction out;
  for (const auto& [key, c] : f.terms()) {
    Mask th = key.first, eta = key.second;
    if (!(th & bit)) continue;
    // pass the eta block, then position sign inside the theta block
    int sign = mask_parity(eta) ? -1 : 1;
    int below = __builtin_popcount(th & (bit - 1));
    if (below & 1) sign = -sign;
    Expr cc = sign < 0 ? ex_neg(c) : c;
    out += SuperFunction::monomial(th & ~bit, eta, cc);
  }
  return out;
}

SuperFunction sf_partial_eta(const SuperFunction& f, int j) {
  if (j < 1) fail(ErrorCode::index_out_of_range, "eta index");
  const Mask bit = Mask(1) << (j - 1);
  SuperFunction out;
  for (const auto& [key, c] : f.terms()) {
    Mask th = key.first, eta = key.second;
    if (!(eta & bit)) continue;
    int below = __builtin_popcount(eta & (bit - 1));
    Expr cc = (below & 1) ? ex_neg(c) : c;
    out += SuperFunction::monomial(th, eta & ~bit, cc);
  }
  return out;
}

SuperFunction sf_subst_scalar(const SuperFunction& f, int var, const Expr& repl) {
  std::map<int, Expr> m{{var, repl}};
  SuperFunction out;
  for (const auto& [key, c] : f.terms()) {
    Expr e = ex_subst(c, m);
    if (!ex_is_zero(e)) out += SuperFunction::monomial(key.first, key.second, e);
  }
  return out;
}

GrassmannElement sf_eval(const SuperFunction& f, const NumericAssignment& a) {
  const int gens = a.gens;
  for (const auto& [var, val] : a.even) {
    auto p = val.parity();
    if (!p || *p != 0)
      fail(ErrorCode::parity_violation,
           "even variable " + var_name(var) + " mapped to a non-even value");
  }
  for (std::size_t j = 0; j < a.theta.size(); ++j) {
    auto p = a.theta[j].parity();
    if (!p || (*p != 1 && !a.theta[j].is_zero()))
      fail(ErrorCode::parity_violation,
           "odd coordinate th" + std::to_string(j + 1) + " mapped to a non-odd value");
  }
  GrassmannEnv env = [&a](int var) -> const GrassmannElement& {
    auto it = a.even.find(var);
    if (it == a.even.end())
      fail(ErrorCode::unresolved_reference, "unassigned variable " + var_name(var));
    return it->second;
  };
  GrassmannElement out(gens);
  for (const auto& [key, c] : f.terms()) {
    GrassmannElement v = ex_eval_gr(c, env, gens);
    v = gr_mul(v, GrassmannElement::monomial(gens, key.second));
    Mask th = key.first;
    while (th) {
      int j = __builtin_ctz(th);
      if (j >= int(a.theta.size()))
        fail(ErrorCode::unresolved_reference, "unassigned odd coordinate th" + std::to_string(j + 1));
      v = gr_mul(v, a.theta[j]);
      th &= th - 1;
    }
    out += v;
  }
  return out;
}

GrassmannElement sf_eval_real_vars(const SuperFunction& f, const RealEnv& env, int gens) {
  GrassmannElement out(gens);
  for (const auto& [key, c] : f.terms()) {
    if (key.first != 0)
      fail(ErrorCode::precondition_failed, "theta content in scalar-context evaluation");
    double v = ex_eval(c, env);
    if (v != 0.0) out += GrassmannElement::monomial(gens, key.second, v);
  }
  return out;
}

namespace {

// One-variable-at-a-time finite Taylor expansion for symbolic composition.
SuperFunction taylor_compose(const Expr& c,
                             const std::vector<std::pair<int, SuperFunction>>& nils,
                             const std::map<int, Expr>& base_subst,
                             std::size_t idx) {
  if (idx == nils.size()) {
    Expr e = ex_subst(c, base_subst);
    return SuperFunction::scalar(e);
  }
  const auto& [var, nil] = nils[idx];
  SuperFunction out;
  Expr deriv = c;
  SuperFunction nil_pow = SuperFunction::constant(1.0);
  double fact = 1.0;
  for (int k = 0;; ++k) {
    if (k > 0) {
      deriv = ex_diff(deriv, var);
      if (ex_is_zero(deriv)) break;
      nil_pow = sf_mul(nil_pow, nil);
      if (nil_pow.is_zero()) break;
      fact *= k;
    }
    SuperFunction inner = taylor_compose(deriv, nils, base_subst, idx + 1);
    out += sf_mul(sf_scale(inner, ex_const(1.0 / fact)), nil_pow);
    if (k > 64) fail(ErrorCode::numeric_failure, "nilpotent expansion failed to terminate");
  }
  return out;
}

} // namespace

SuperFunction sf_compose(const SuperFunction& f, const SymbolicAssignment& a) {
  std::map<int, Expr> base_subst;
  std::vector<std::pair<int, SuperFunction>> nils;
  for (const auto& [var, g] : a.even) {
    if (!g.is_even())
      fail(ErrorCode::parity_violation,
           "even variable " + var_name(var) + " assigned a non-even superfunction");
    base_subst[var] = g.coeff(0, 0);
    SuperFunction nil = g;
    nil.set_coeff(0, 0, ex_const(0.0));
    if (!nil.is_zero()) nils.emplace_back(var, nil);
  }
  for (std::size_t j = 0; j < a.theta.size(); ++j) {
    const auto& o = a.theta[j];
    if (!o.is_odd() && !o.is_zero())
      fail(ErrorCode::parity_violation,
           "odd coordinate th" + std::to_string(j + 1) + " assigned a non-odd superfunction");
  }

  SuperFunction out;
  for (const auto& [key, c] : f.terms()) {
    SuperFunction term = taylor_compose(c, nils, base_subst, 0);
    if (key.second) term = sf_mul(term, SuperFunction::monomial(0, key.second, ex_const(1.0)));
    Mask th = key.first;
    while (th) {
      int j = __builtin_ctz(th);
      if (j >= int(a.theta.size()))
        fail(ErrorCode::unresolved_reference,
             "unassigned odd coordinate th" + std::to_string(j + 1));
      term = sf_mul(term, a.theta[j]);
      th &= th - 1;
    }
    out += term;
  }
  return out;
}

namespace {

struct MonoOrder {
  // (total degree, lexicographic on the combined symbol sequence with the
  // global ranking eta1 < ... < etaG < th1 < ... < thm)
  static std::vector<int> seq(const SuperFunction::Key& k) {
    std::vector<int> s;
    Mask x = k.second;
    while (x) {
      s.push_back(__builtin_ctz(x));
      x &= x - 1;
    }
    x = k.first;
    while (x) {
      s.push_back(1000 + __builtin_ctz(x));
      x &= x - 1;
    }
    return s;
  }
  bool operator()(const SuperFunction::Key& a, const SuperFunction::Key& b) const {
    auto sa = seq(a), sb = seq(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
  }
};

std::string mono_string(const SuperFunction::Key& key) {
  std::string s;
  Mask x = key.second;
  while (x) {
    int j = __builtin_ctz(x);
    if (!s.empty()) s += "*";
    s += "eta" + std::to_string(j + 1);
    x &= x - 1;
  }
  x = key.first;
  while (x) {
    int j = __builtin_ctz(x);
    if (!s.empty()) s += "*";
    s += "th" + std::to_string(j + 1);
    x &= x - 1;
  }
  return s;
}

} // namespace

std::string sf_print(const SuperFunction& f) {
  if (f.is_zero()) return "0";
  std::vector<SuperFunction::Key> keys;
  for (const auto& [key, c] : f.terms()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), MonoOrder{});

  std::string out;
  bool first = true;
  for (const auto& key : keys) {
    Expr c = f.coeff(key.first, key.second);
    std::string mono = mono_string(key);

    // peel a leading sign off the coefficient for readable joins
    bool neg = false;
    Expr mag = c;
    if (ex_is_const(c) && c->value < 0.0) {
      neg = true;
      mag = ex_const(-c->value);
    } else if (c->kind == ExprNode::Kind::mul && ex_is_const(c->kids[0]) &&
               c->kids[0]->value < 0.0) {
      neg = true;
      std::vector<Expr> kk = c->kids;
      kk[0] = ex_const(-kk[0]->value);
      mag = ex_mul(std::move(kk));
    }

    std::string cs;
    if (mono.empty()) {
      cs = ex_to_string(mag);
    } else if (ex_is_const(mag) && mag->value == 1.0) {
      cs = mono;
    } else {
      // coefficient needs product-level precedence in front of the monomial
      std::string body = ex_to_string(mag);
      if (mag->kind == ExprNode::Kind::add || mag->kind == ExprNode::Kind::div ||
          (ex_is_const(mag) && mag->value < 0.0))
        body = "(" + body + ")";
      cs = body + "*" + mono;
    }

    if (first) {
      out += neg ? "-" + cs : cs;
      first = false;
    } else {
      out += neg ? " - " + cs : " + " + cs;
    }
  }
  return out;
}

GrassmannElement sf_to_element(const SuperFunction& f, int gens) {
  GrassmannElement out(gens);
  for (const auto& [key, c] : f.terms()) {
    if (key.first != 0)
      fail(ErrorCode::precondition_failed, "theta content in a constant value");
    if (!ex_is_const(c))
      fail(ErrorCode::precondition_failed, "non-constant coefficient in a constant value");
    if (key.second >= (Mask(1) << gens))
      fail(ErrorCode::dimension_mismatch, "eta index beyond generator count");
    out[key.second] += c->value;
  }
  return out;
}

double sf_coeff_distance(const SuperFunction& a, const SuperFunction& b, const RealEnv& env) {
  double m = 0.0;
  auto scan = [&](const SuperFunction& f, const SuperFunction& g) {
    for (const auto& [key, c] : f.terms()) {
      double va = ex_eval(c, env);
      double vb = ex_eval(g.coeff(key.first, key.second), env);
      m = std::max(m, std::fabs(va - vb));
    }
  };
  scan(a, b);
  scan(b, a);
  return m;
}

} // namespace superhol
