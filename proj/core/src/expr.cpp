#include "superhol/expr.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace superhol {

std::string var_name(int code) {
  if (code == kVarT) return "t";
  if (code == kVarS) return "s";
  return "x" + std::to_string(code);
}

const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::tanh: return "tanh";
    case Func::sqrt: return "sqrt";
  }
  return "?";
}

namespace {

Expr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

double fold_func(Func f, double a) {
  switch (f) {
    case Func::sin: return std::sin(a);
    case Func::cos: return std::cos(a);
    case Func::exp: return std::exp(a);
    case Func::tanh: return std::tanh(a);
    case Func::sqrt: return std::sqrt(a);
  }
  return 0.0;
}

} // namespace

Expr ex_const(double v) {
  ExprNode n;
  n.kind = ExprNode::Kind::constant;
  n.value = v;
  return make(std::move(n));
}

Expr ex_var(int code) {
  ExprNode n;
  n.kind = ExprNode::Kind::var;
  n.var = code;
  return make(std::move(n));
}

bool ex_is_zero(const Expr& e) {
  return e->kind == ExprNode::Kind::constant && e->value == 0.0;
}

bool ex_is_const(const Expr& e) { return e->kind == ExprNode::Kind::constant; }

Expr ex_add(std::vector<Expr> kids) {
  std::vector<Expr> flat;
  double c = 0.0;
  for (auto& k : kids) {
    if (k->kind == ExprNode::Kind::add) {
      for (auto& kk : k->kids) {
        if (ex_is_const(kk))
          c += kk->value;
        else
          flat.push_back(kk);
      }
    } else if (ex_is_const(k)) {
      c += k->value;
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (c != 0.0) flat.push_back(ex_const(c));
  if (flat.empty()) return ex_const(0.0);
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.kind = ExprNode::Kind::add;
  n.kids = std::move(flat);
  return make(std::move(n));
}

Expr ex_add(const Expr& a, const Expr& b) { return ex_add(std::vector<Expr>{a, b}); }
Expr ex_sub(const Expr& a, const Expr& b) { return ex_add(a, ex_neg(b)); }

Expr ex_mul(std::vector<Expr> kids) {
  std::vector<Expr> flat;
  double c = 1.0;
  for (auto& k : kids) {
    if (k->kind == ExprNode::Kind::mul) {
      for (auto& kk : k->kids) {
        if (ex_is_const(kk))
          c *= kk->value;
        else
          flat.push_back(kk);
      }
    } else if (ex_is_const(k)) {
      c *= k->value;
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (c == 0.0) return ex_const(0.0);
  if (flat.empty()) return ex_const(c);
  if (c != 1.0) flat.insert(flat.begin(), ex_const(c));
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.kind = ExprNode::Kind::mul;
  n.kids = std::move(flat);
  return make(std::move(n));
}

Expr ex_mul(const Expr& a, const Expr& b) { return ex_mul(std::vector<Expr>{a, b}); }
Expr ex_neg(const Expr& a) { return ex_mul(ex_const(-1.0), a); }

Expr ex_pow(const Expr& base, int k) {
  if (k == 0) return ex_const(1.0);
  if (k == 1) return base;
  if (ex_is_const(base)) return ex_const(std::pow(base->value, k));
  if (base->kind == ExprNode::Kind::pow) return ex_pow(base->kids[0], base->ipow * k);
  ExprNode n;
  n.kind = ExprNode::Kind::pow;
  n.ipow = k;
  n.kids = {base};
  return make(std::move(n));
}

Expr ex_func(Func f, const Expr& arg) {
  if (ex_is_const(arg)) {
    double v = fold_func(f, arg->value);
    if (std::isfinite(v)) return ex_const(v);
  }
  ExprNode n;
  n.kind = ExprNode::Kind::func;
  n.fn = f;
  n.kids = {arg};
  return make(std::move(n));
}

Expr ex_div(const Expr& num, double divisor) {
  if (divisor == 0.0) fail(ErrorCode::parse_error, "division by zero literal");
  Expr e = num;
  double d = divisor;
  if (d < 0.0) {
    e = ex_neg(e);
    d = -d;
  }
  if (ex_is_const(e)) return ex_const(e->value / d);
  if (d == 1.0) return e;
  ExprNode n;
  n.kind = ExprNode::Kind::div;
  n.divisor = d;
  n.kids = {e};
  return make(std::move(n));
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::constant: return a->value == b->value;
    case ExprNode::Kind::var: return a->var == b->var;
    case ExprNode::Kind::pow:
      if (a->ipow != b->ipow) return false;
      break;
    case ExprNode::Kind::func:
      if (a->fn != b->fn) return false;
      break;
    case ExprNode::Kind::div:
      if (a->divisor != b->divisor) return false;
      break;
    default: break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

void collect_vars(const Expr& e, std::set<int>& out) {
  if (e->kind == ExprNode::Kind::var) out.insert(e->var);
  for (const auto& k : e->kids) collect_vars(k, out);
}

namespace {

// precedence levels: add 1, mul/div 2, pow 3, atom 4
int level(const Expr& e) {
  switch (e->kind) {
    case ExprNode::Kind::add: return 1;
    case ExprNode::Kind::mul:
    case ExprNode::Kind::div: return 2;
    case ExprNode::Kind::pow: return 3;
    case ExprNode::Kind::constant: return e->value < 0.0 ? 2 : 4;
    default: return 4;
  }
}

std::string render(const Expr& e, int min_level) {
  std::string s;
  switch (e->kind) {
    case ExprNode::Kind::constant: s = format_double(e->value); break;
    case ExprNode::Kind::var: s = var_name(e->var); break;
    case ExprNode::Kind::add: {
      s = render(e->kids[0], 1);
      for (std::size_t i = 1; i < e->kids.size(); ++i) {
        const Expr& k = e->kids[i];
        // pull a leading negative constant out as a binary minus
        if (ex_is_const(k) && k->value < 0.0) {
          s += " - " + format_double(-k->value);
        } else if (k->kind == ExprNode::Kind::mul && ex_is_const(k->kids[0]) &&
                   k->kids[0]->value < 0.0) {
          std::vector<Expr> kk = k->kids;
          kk[0] = ex_const(-kk[0]->value);
          s += " - " + render(ex_mul(std::move(kk)), 2);
        } else {
          s += " + " + render(k, 2);
        }
      }
      break;
    }
    case ExprNode::Kind::mul: {
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) s += "*";
        s += render(e->kids[i], 3);
      }
      break;
    }
    case ExprNode::Kind::div:
      s = render(e->kids[0], 3) + "/" + format_double(e->divisor);
      break;
    case ExprNode::Kind::pow:
      s = render(e->kids[0], 4) + "^" + std::to_string(e->ipow);
      break;
    case ExprNode::Kind::func:
      s = std::string(func_name(e->fn)) + "(" + render(e->kids[0], 1) + ")";
      break;
  }
  if (level(e) < min_level) s = "(" + s + ")";
  return s;
}

} // namespace

std::string ex_to_string(const Expr& e) { return render(e, 1); }

double ex_eval(const Expr& e, const RealEnv& env) {
  switch (e->kind) {
    case ExprNode::Kind::constant: return e->value;
    case ExprNode::Kind::var: return env(e->var);
    case ExprNode::Kind::add: {
      double s = 0.0;
      for (const auto& k : e->kids) s += ex_eval(k, env);
      return s;
    }
    case ExprNode::Kind::mul: {
      double s = 1.0;
      for (const auto& k : e->kids) s *= ex_eval(k, env);
      return s;
    }
    case ExprNode::Kind::div: return ex_eval(e->kids[0], env) / e->divisor;
    case ExprNode::Kind::pow: {
      double b = ex_eval(e->kids[0], env);
      if (e->ipow < 0 && b == 0.0)
        fail(ErrorCode::numeric_failure, "zero base with negative exponent");
      return std::pow(b, e->ipow);
    }
    case ExprNode::Kind::func: {
      double a = ex_eval(e->kids[0], env);
      if (e->fn == Func::sqrt && a < 0.0)
        fail(ErrorCode::numeric_failure, "sqrt of negative value");
      return fold_func(e->fn, a);
    }
  }
  return 0.0;
}

std::vector<double> func_jet(Func f, double a, int order) {
  std::vector<double> c(order + 1, 0.0);
  switch (f) {
    case Func::sin:
    case Func::cos: {
      double fact = 1.0;
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        int phase = (f == Func::sin) ? k : k + 1;
        double d = 0.0;
        switch (phase & 3) {
          case 0: d = std::sin(a); break;
          case 1: d = std::cos(a); break;
          case 2: d = -std::sin(a); break;
          case 3: d = -std::cos(a); break;
        }
        c[k] = d / fact;
      }
      break;
    }
    case Func::exp: {
      double fact = 1.0, v = std::exp(a);
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        c[k] = v / fact;
      }
      break;
    }
    case Func::tanh: {
      // T' = 1 - T^2 on the truncated series
      c[0] = std::tanh(a);
      for (int k = 0; k < order; ++k) {
        double s = (k == 0) ? 1.0 : 0.0;
        for (int i = 0; i <= k; ++i) s -= c[i] * c[k - i];
        c[k + 1] = s / (k + 1);
      }
      break;
    }
    case Func::sqrt: {
      if (a < 0.0) fail(ErrorCode::numeric_failure, "sqrt of negative value");
      if (a == 0.0) {
        if (order > 0)
          fail(ErrorCode::numeric_failure, "sqrt not differentiable at zero");
        return c;
      }
      // S*S = a + h coefficientwise
      c[0] = std::sqrt(a);
      for (int k = 1; k <= order; ++k) {
        double s = (k == 1) ? 1.0 : 0.0;
        for (int i = 1; i < k; ++i) s -= c[i] * c[k - i];
        c[k] = s / (2.0 * c[0]);
      }
      break;
    }
  }
  return c;
}

GrassmannElement ex_eval_gr(const Expr& e, const GrassmannEnv& env, int gens) {
  switch (e->kind) {
    case ExprNode::Kind::constant: return GrassmannElement(gens, e->value);
    case ExprNode::Kind::var: {
      const GrassmannElement& v = env(e->var);
      if (v.gens() != gens)
        fail(ErrorCode::dimension_mismatch, "environment generator mismatch");
      return v;
    }
    case ExprNode::Kind::add: {
      GrassmannElement s(gens);
      for (const auto& k : e->kids) s += ex_eval_gr(k, env, gens);
      return s;
    }
    case ExprNode::Kind::mul: {
      GrassmannElement s(gens, 1.0);
      for (const auto& k : e->kids) s = gr_mul(s, ex_eval_gr(k, env, gens));
      return s;
    }
    case ExprNode::Kind::div:
      return ex_eval_gr(e->kids[0], env, gens) * (1.0 / e->divisor);
    case ExprNode::Kind::pow: {
      GrassmannElement b = ex_eval_gr(e->kids[0], env, gens);
      int k = e->ipow;
      if (k < 0) {
        b = gr_inverse(b);
        k = -k;
      }
      GrassmannElement s(gens, 1.0);
      for (int i = 0; i < k; ++i) s = gr_mul(s, b);
      return s;
    }
    case ExprNode::Kind::func: {
      GrassmannElement u = ex_eval_gr(e->kids[0], env, gens);
      auto [a, n] = gr_body_soul(u);
      if (n.is_zero()) {
        if (e->fn == Func::sqrt && a < 0.0)
          fail(ErrorCode::numeric_failure, "sqrt of negative value");
        return GrassmannElement(gens, fold_func(e->fn, a));
      }
      int order = n.nilpotency_index() - 1;
      std::vector<double> jet = func_jet(e->fn, a, order);
      GrassmannElement s(gens, jet[0]);
      GrassmannElement pw(gens, 1.0);
      for (int k = 1; k <= order; ++k) {
        pw = gr_mul(pw, n);
        s += jet[k] * pw;
      }
      return s;
    }
  }
  return GrassmannElement(gens);
}

namespace {

struct DiffKey {
  const ExprNode* node;
  int var;
  bool operator==(const DiffKey& o) const { return node == o.node && var == o.var; }
};

struct DiffKeyHash {
  std::size_t operator()(const DiffKey& k) const {
    return std::hash<const void*>()(k.node) ^ (std::hash<int>()(k.var) << 1);
  }
};

std::mutex g_diff_mutex;
// values hold their key's subtree alive through the stored pair
std::unordered_map<DiffKey, std::pair<Expr, Expr>, DiffKeyHash> g_diff_cache;

Expr diff_uncached(const Expr& e, int var);

Expr diff_cached(const Expr& e, int var) {
  {
    std::lock_guard<std::mutex> lock(g_diff_mutex);
    auto it = g_diff_cache.find({e.get(), var});
    if (it != g_diff_cache.end()) return it->second.second;
  }
  Expr d = diff_uncached(e, var);
  {
    std::lock_guard<std::mutex> lock(g_diff_mutex);
    g_diff_cache.emplace(DiffKey{e.get(), var}, std::make_pair(e, d));
  }
  return d;
}

Expr diff_uncached(const Expr& e, int var) {
  switch (e->kind) {
    case ExprNode::Kind::constant: return ex_const(0.0);
    case ExprNode::Kind::var: return ex_const(e->var == var ? 1.0 : 0.0);
    case ExprNode::Kind::add: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids) kids.push_back(diff_cached(k, var));
      return ex_add(std::move(kids));
    }
    case ExprNode::Kind::mul: {
      std::vector<Expr> sum;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<Expr> prod = e->kids;
        prod[i] = diff_cached(e->kids[i], var);
        sum.push_back(ex_mul(std::move(prod)));
      }
      return ex_add(std::move(sum));
    }
    case ExprNode::Kind::div:
      return ex_div(diff_cached(e->kids[0], var), e->divisor);
    case ExprNode::Kind::pow: {
      Expr inner = diff_cached(e->kids[0], var);
      return ex_mul({ex_const(double(e->ipow)), ex_pow(e->kids[0], e->ipow - 1), inner});
    }
    case ExprNode::Kind::func: {
      const Expr& g = e->kids[0];
      Expr dg = diff_cached(g, var);
      switch (e->fn) {
        case Func::sin: return ex_mul(ex_func(Func::cos, g), dg);
        case Func::cos: return ex_neg(ex_mul(ex_func(Func::sin, g), dg));
        case Func::exp: return ex_mul(ex_func(Func::exp, g), dg);
        case Func::tanh:
          return ex_mul(ex_sub(ex_const(1.0), ex_pow(ex_func(Func::tanh, g), 2)), dg);
        case Func::sqrt:
          return ex_mul({ex_const(0.5), ex_pow(ex_func(Func::sqrt, g), -1), dg});
      }
      return ex_const(0.0);
    }
  }
  return ex_const(0.0);
}

} // namespace

Expr ex_diff(const Expr& e, int var) { return diff_cached(e, var); }

Expr ex_subst(const Expr& e, const std::map<int, Expr>& repl) {
  switch (e->kind) {
    case ExprNode::Kind::constant: return e;
    case ExprNode::Kind::var: {
      auto it = repl.find(e->var);
      return it == repl.end() ? e : it->second;
    }
    case ExprNode::Kind::add: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids) kids.push_back(ex_subst(k, repl));
      return ex_add(std::move(kids));
    }
    case ExprNode::Kind::mul: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids) kids.push_back(ex_subst(k, repl));
      return ex_mul(std::move(kids));
    }
    case ExprNode::Kind::div: return ex_div(ex_subst(e->kids[0], repl), e->divisor);
    case ExprNode::Kind::pow: return ex_pow(ex_subst(e->kids[0], repl), e->ipow);
    case ExprNode::Kind::func: return ex_func(e->fn, ex_subst(e->kids[0], repl));
  }
  return e;
}

} // namespace superhol
