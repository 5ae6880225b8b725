#include "superhol/geometry.hpp"

#include <algorithm>

namespace superhol {

// ---------------------------------------------------------------------------
// points

SPoint SPoint::origin(const ChartSpec& chart, int gens) {
  SPoint p{chart, gens, {}};
  p.coords.assign(std::size_t(chart.coords()), GrassmannElement(gens));
  return p;
}

SPoint SPoint::from_body(const ChartSpec& chart, int gens, const std::vector<double>& xs) {
  if (int(xs.size()) != chart.even_dim)
    fail(ErrorCode::dimension_mismatch, "body coordinate count mismatch");
  SPoint p = origin(chart, gens);
  for (int i = 0; i < chart.even_dim; ++i) p.coords[i] = GrassmannElement(gens, xs[i]);
  return p;
}

void SPoint::validate() const {
  if (int(coords.size()) != chart.coords())
    fail(ErrorCode::dimension_mismatch, "coordinate count mismatch");
  for (int l = 0; l < chart.coords(); ++l) {
    auto par = coords[l].parity();
    int want = chart.coord_parity(l);
    bool ok = coords[l].is_zero() || (par && *par == want);
    if (!ok)
      fail(ErrorCode::parity_violation,
           "coordinate " + std::to_string(l) + " has wrong parity");
  }
}

NumericAssignment SPoint::assignment() const {
  NumericAssignment a;
  a.gens = gens;
  for (int l = 0; l < chart.even_dim; ++l) a.even[chart.coord_scalar_var(l)] = coords[l];
  for (int l = chart.even_dim; l < chart.coords(); ++l) a.theta.push_back(coords[l]);
  return a;
}

SPoint SPoint::extended(int new_gens) const {
  SPoint p{chart, new_gens, {}};
  for (const auto& c : coords) p.coords.push_back(gr_extend(c, new_gens));
  return p;
}

// ---------------------------------------------------------------------------
// superfunction matrices

SfMatrix SfMatrix::identity(int p, int q) {
  SfMatrix m(p, q);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = SuperFunction::constant(1.0);
  return m;
}

bool SfMatrix::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](const SuperFunction& f) { return f.is_zero(); });
}

SfMatrix& SfMatrix::operator+=(const SfMatrix& o) {
  if (p != o.p || q != o.q) fail(ErrorCode::dimension_mismatch, "matrix shape mismatch");
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
  return *this;
}

SfMatrix& SfMatrix::operator-=(const SfMatrix& o) {
  if (p != o.p || q != o.q) fail(ErrorCode::dimension_mismatch, "matrix shape mismatch");
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
  return *this;
}

SfMatrix sfm_mul(const SfMatrix& a, const SfMatrix& b) {
  if (a.p != b.p || a.q != b.q) fail(ErrorCode::dimension_mismatch, "matrix shape mismatch");
  SfMatrix out(a.p, a.q);
  for (int r = 0; r < a.dim(); ++r)
    for (int k = 0; k < a.dim(); ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (int c = 0; c < a.dim(); ++c) {
        if (b.at(k, c).is_zero()) continue;
        out.at(r, c) += sf_mul(a.at(r, k), b.at(k, c));
      }
    }
  return out;
}

SfMatrix sfm_scale(const SfMatrix& a, const Expr& c) {
  SfMatrix out(a.p, a.q);
  for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = sf_scale(a.e[i], c);
  return out;
}

SfMatrix sfm_neg(const SfMatrix& a) { return sfm_scale(a, ex_const(-1.0)); }

SfMatrix sfm_scalar_op(const SuperFunction& c, const SfMatrix& a) {
  auto [ce, co] = c.parity_split();
  SfMatrix out(a.p, a.q);
  for (int r = 0; r < a.dim(); ++r)
    for (int col = 0; col < a.dim(); ++col) {
      if (a.at(r, col).is_zero()) continue;
      SuperFunction f = sf_mul(ce, a.at(r, col));
      SuperFunction g = sf_mul(co, a.at(r, col));
      out.at(r, col) += a.row_parity(r) ? f - g : f + g;
    }
  return out;
}

namespace {

SuperFunction coord_partial(const SuperFunction& f, const ChartSpec& chart, int l) {
  if (chart.coord_parity(l) == 0) return sf_partial(f, chart.coord_scalar_var(l));
  return sf_partial_theta(f, chart.coord_theta_index(l));
}

} // namespace

SfMatrix sfm_coord_derivative(const SfMatrix& a, const ChartSpec& chart, int l) {
  SfMatrix out(a.p, a.q);
  int lp = chart.coord_parity(l);
  for (int r = 0; r < a.dim(); ++r) {
    bool flip = lp && a.row_parity(r);
    for (int c = 0; c < a.dim(); ++c) {
      if (a.at(r, c).is_zero()) continue;
      SuperFunction d = coord_partial(a.at(r, c), chart, l);
      out.at(r, c) = flip ? sf_neg(d) : d;
    }
  }
  return out;
}

SuperMatrix sfm_eval(const SfMatrix& a, const NumericAssignment& at, int gens) {
  SuperMatrix out(a.p, a.q, gens);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (!a.at(r, c).is_zero()) out.at(r, c) = sf_eval(a.at(r, c), at);
  return out;
}

SfMatrix sfm_compose(const SfMatrix& a, const SymbolicAssignment& at) {
  SfMatrix out(a.p, a.q);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (!a.at(r, c).is_zero()) out.at(r, c) = sf_compose(a.at(r, c), at);
  return out;
}

SfSection apply_matrix(const SfMatrix& a, const SfSection& z) {
  if (int(z.size()) != a.dim()) fail(ErrorCode::dimension_mismatch, "section length mismatch");
  SfSection out(z.size());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) {
      if (a.at(r, c).is_zero() || z[c].is_zero()) continue;
      out[r] += sf_mul(a.at(r, c), z[c]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// connections

ConnectionSpec ConnectionSpec::flat(const ChartSpec& chart, int p, int q) {
  ConnectionSpec c;
  c.chart = chart;
  c.p = p;
  c.q = q;
  c.gamma.assign(std::size_t(chart.coords()), SfMatrix(p, q));
  return c;
}

void ConnectionSpec::validate() const {
  if (int(gamma.size()) != chart.coords())
    fail(ErrorCode::dimension_mismatch, "one Gamma matrix per coordinate required");
  for (int l = 0; l < chart.coords(); ++l) {
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < dim(); ++c) {
        const SuperFunction& f = gamma[l].at(r, c);
        if (f.is_zero()) continue;
        int want = (chart.coord_parity(l) + frame_parity(r) + frame_parity(c)) & 1;
        auto par = f.parity();
        if (!par || *par != want)
          fail(ErrorCode::parity_violation,
               "connection entry Gamma_" + std::to_string(l) + "[" + std::to_string(r) +
                   "," + std::to_string(c) + "] violates evenness");
      }
  }
}

SfSection ConnectionSpec::covariant_derivative(int l, const SfSection& z) const {
  if (int(z.size()) != dim()) fail(ErrorCode::dimension_mismatch, "section length mismatch");
  SfSection out(z.size());
  int lp = chart.coord_parity(l);
  for (int m = 0; m < dim(); ++m) {
    SuperFunction d = coord_partial(z[m], chart, l);
    out[m] = (lp && frame_parity(m)) ? sf_neg(d) : d;
  }
  SfSection g = apply_matrix(gamma[l], z);
  for (int m = 0; m < dim(); ++m) out[m] += g[m];
  return out;
}

AuxConnectionSpec flat_aux(const ChartSpec& chart) {
  return ConnectionSpec::flat(chart, chart.even_dim, chart.odd_dim);
}

SuperFunction sf_left_to_right(const SuperFunction& left, int frame_parity) {
  if (!frame_parity) return left;
  auto [e, o] = left.parity_split();
  return e - o;
}

// ---------------------------------------------------------------------------
// curvature

SfMatrix curvature_frame(const ConnectionSpec& conn, int i, int j) {
  const ChartSpec& ch = conn.chart;
  auto half = [&](int a, int b) {
    SfMatrix m = sfm_coord_derivative(conn.gamma[b], ch, a);
    m += sfm_mul(conn.gamma[a], conn.gamma[b]);
    return m;
  };
  SfMatrix out = half(i, j);
  SfMatrix other = half(j, i);
  bool both_odd = ch.coord_parity(i) && ch.coord_parity(j);
  out += both_odd ? other : sfm_neg(other);
  return out;
}

CurvatureTable::CurvatureTable(const ConnectionSpec& conn) : coords_(conn.chart.coords()) {
  table_.reserve(std::size_t(coords_) * coords_);
  for (int i = 0; i < coords_; ++i)
    for (int j = 0; j < coords_; ++j) table_.push_back(curvature_frame(conn, i, j));
}

const SfMatrix& CurvatureTable::at(int i, int j) const {
  return table_[std::size_t(i) * coords_ + j];
}

CurvTensor curvature_tensor(const ConnectionSpec& conn) {
  CurvTensor t;
  t.parity = 0;
  t.coords = conn.chart.coords();
  t.table.reserve(std::size_t(t.coords) * t.coords);
  for (int i = 0; i < t.coords; ++i)
    for (int j = 0; j < t.coords; ++j) t.table.push_back(curvature_frame(conn, i, j));
  return t;
}

std::vector<std::vector<SuperFunction>> differential_matrix(
    const std::vector<SuperFunction>& components, const std::vector<int>& target_parity,
    const std::vector<DomainVar>& domain) {
  if (components.size() != target_parity.size())
    fail(ErrorCode::dimension_mismatch, "component/parity count mismatch");
  std::vector<std::vector<SuperFunction>> out(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    out[i].resize(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) {
      SuperFunction d = domain[k].parity == 0
                            ? sf_partial(components[i], domain[k].scalar_var)
                            : sf_partial_theta(components[i], domain[k].theta_idx);
      int sign_exp = (domain[k].parity + target_parity[i]) * target_parity[i];
      out[i][k] = (sign_exp & 1) ? sf_neg(d) : d;
    }
  }
  return out;
}

namespace {

// Q(d_n . w, d_j)[T^c] = (-1)^{|w|(|xi^j|+|T^c|)} Q(d_n,d_j)[T^c] . w
SfMatrix contract_slot1(const CurvTensor& q, int j, const std::vector<SuperFunction>& w,
                        const std::vector<int>& w_parity, const ChartSpec& ch, int p,
                        int qq) {
  SfMatrix out(p, qq);
  int jp = ch.coord_parity(j);
  for (int n = 0; n < ch.coords(); ++n) {
    if (w[n].is_zero()) continue;
    const SfMatrix& m = q.at(n, j);
    for (int r = 0; r < out.dim(); ++r)
      for (int c = 0; c < out.dim(); ++c) {
        if (m.at(r, c).is_zero()) continue;
        int colp = c >= p ? 1 : 0;
        SuperFunction t = sf_mul(m.at(r, c), w[n]);
        out.at(r, c) += ((w_parity[n] * ((jp + colp) & 1)) & 1) ? sf_neg(t) : t;
      }
  }
  return out;
}

// Q(d_i, d_n . w)[T^c] = (-1)^{|w||T^c|} Q(d_i,d_n)[T^c] . w
SfMatrix contract_slot2(const CurvTensor& q, int i, const std::vector<SuperFunction>& w,
                        const std::vector<int>& w_parity, const ChartSpec& ch, int p,
                        int qq) {
  SfMatrix out(p, qq);
  for (int n = 0; n < ch.coords(); ++n) {
    if (w[n].is_zero()) continue;
    const SfMatrix& m = q.at(i, n);
    for (int r = 0; r < out.dim(); ++r)
      for (int c = 0; c < out.dim(); ++c) {
        if (m.at(r, c).is_zero()) continue;
        int colp = c >= p ? 1 : 0;
        SuperFunction t = sf_mul(m.at(r, c), w[n]);
        out.at(r, c) += ((w_parity[n] * colp) & 1) ? sf_neg(t) : t;
      }
  }
  return out;
}

} // namespace

CurvTensor cov_deriv_tensor(const ConnectionSpec& conn, const AuxConnectionSpec& aux,
                            const CurvTensor& q, int dir) {
  const ChartSpec& ch = conn.chart;
  int a = dir;
  int ap = ch.coord_parity(a);
  CurvTensor out;
  out.parity = (q.parity + ap) & 1;
  out.coords = q.coords;
  out.table.assign(std::size_t(q.coords) * q.coords, SfMatrix(conn.p, conn.q));

  for (int i = 0; i < q.coords; ++i)
    for (int j = 0; j < q.coords; ++j) {
      const SfMatrix& qij = q.at(i, j);
      // nabla_a o Q(d_i, d_j)
      SfMatrix m = sfm_coord_derivative(qij, ch, a);
      m += sfm_mul(conn.gamma[a], qij);

      // - (-1)^{|Q||a|} Q(aux_a d_i, d_j)
      std::vector<SuperFunction> w1(std::size_t(ch.coords()));
      std::vector<int> w1p(std::size_t(ch.coords()));
      for (int n = 0; n < ch.coords(); ++n) {
        w1[n] = aux.gamma[a].at(n, i);
        w1p[n] = (ap + ch.coord_parity(n) + ch.coord_parity(i)) & 1;
      }
      SfMatrix t2 = contract_slot1(q, j, w1, w1p, ch, conn.p, conn.q);
      m += ((q.parity * ap) & 1) ? t2 : sfm_neg(t2);

      // - (-1)^{|a|(|Q|+|i|)} Q(d_i, aux_a d_j)
      std::vector<SuperFunction> w2(std::size_t(ch.coords()));
      std::vector<int> w2p(std::size_t(ch.coords()));
      for (int n = 0; n < ch.coords(); ++n) {
        w2[n] = aux.gamma[a].at(n, j);
        w2p[n] = (ap + ch.coord_parity(n) + ch.coord_parity(j)) & 1;
      }
      SfMatrix t3 = contract_slot2(q, i, w2, w2p, ch, conn.p, conn.q);
      m += ((ap * ((q.parity + ch.coord_parity(i)) & 1)) & 1) ? t3 : sfm_neg(t3);

      // - (-1)^{|a|(|Q|+|i|+|j|)} Q(d_i,d_j) o nabla_a
      SfMatrix t4 = sfm_mul(qij, conn.gamma[a]);
      m += ((ap * ((q.parity + ch.coord_parity(i) + ch.coord_parity(j)) & 1)) & 1)
               ? t4
               : sfm_neg(t4);

      out.at(i, j) = std::move(m);
    }
  return out;
}

SfMatrix cov_deriv_curvature(const ConnectionSpec& conn, const AuxConnectionSpec& aux,
                             const std::vector<int>& dirs, int u, int v) {
  if (dirs.size() > 2)
    fail(ErrorCode::unsupported_order,
         "covariant derivatives of the curvature are supported up to second order");
  CurvTensor r = curvature_tensor(conn);
  if (dirs.empty()) return r.at(u, v);
  if (dirs.size() == 1) return cov_deriv_tensor(conn, aux, r, dirs[0]).at(u, v);

  const ChartSpec& ch = conn.chart;
  int a = dirs[0], b = dirs[1];
  int ap = ch.coord_parity(a), bp = ch.coord_parity(b);
  int abp = (ap + bp) & 1;
  int up = ch.coord_parity(u), vp = ch.coord_parity(v);

  // nabla_a (nabla_b R)(u, v)
  CurvTensor qb = cov_deriv_tensor(conn, aux, r, b);
  SfMatrix m = cov_deriv_tensor(conn, aux, qb, a).at(u, v);

  // direction W = aux_a d_b, components w_n
  std::vector<SuperFunction> w(std::size_t(ch.coords()));
  std::vector<int> wp(std::size_t(ch.coords()));
  for (int n = 0; n < ch.coords(); ++n) {
    w[n] = aux.gamma[a].at(n, b);
    wp[n] = (ap + ch.coord_parity(n) + bp) & 1;
  }

  const SfMatrix& ruv = r.at(u, v);

  // - nabla_W o R(u,v)
  for (int n = 0; n < ch.coords(); ++n) {
    if (w[n].is_zero()) continue;
    SfMatrix inner = sfm_coord_derivative(ruv, ch, n);
    inner += sfm_mul(conn.gamma[n], ruv);
    SfMatrix t = sfm_scalar_op(w[n], inner);
    m += ((wp[n] * ch.coord_parity(n)) & 1) ? t : sfm_neg(t);
  }

  // + (-1)^{(|a|+|b|)|R|} R(aux_W u, v) with |R| = 0
  std::vector<SuperFunction> wu(std::size_t(ch.coords()));
  std::vector<int> wup(std::size_t(ch.coords()));
  for (int rr = 0; rr < ch.coords(); ++rr) {
    SuperFunction acc;
    for (int n = 0; n < ch.coords(); ++n) {
      if (w[n].is_zero() || aux.gamma[n].at(rr, u).is_zero()) continue;
      SuperFunction t = sf_mul(w[n], aux.gamma[n].at(rr, u));
      acc += ((wp[n] * ((ch.coord_parity(n) + ch.coord_parity(rr)) & 1)) & 1) ? sf_neg(t) : t;
    }
    wu[rr] = acc;
    wup[rr] = (abp + ch.coord_parity(rr) + up) & 1;
  }
  m += contract_slot1(r, v, wu, wup, ch, conn.p, conn.q);

  // + (-1)^{(|a|+|b|)(|R|+|u|)} R(u, aux_W v)
  std::vector<SuperFunction> wv(std::size_t(ch.coords()));
  std::vector<int> wvp(std::size_t(ch.coords()));
  for (int rr = 0; rr < ch.coords(); ++rr) {
    SuperFunction acc;
    for (int n = 0; n < ch.coords(); ++n) {
      if (w[n].is_zero() || aux.gamma[n].at(rr, v).is_zero()) continue;
      SuperFunction t = sf_mul(w[n], aux.gamma[n].at(rr, v));
      acc += ((wp[n] * ((ch.coord_parity(n) + ch.coord_parity(rr)) & 1)) & 1) ? sf_neg(t) : t;
    }
    wv[rr] = acc;
    wvp[rr] = (abp + ch.coord_parity(rr) + vp) & 1;
  }
  {
    SfMatrix t = contract_slot2(r, u, wv, wvp, ch, conn.p, conn.q);
    m += ((abp * up) & 1) ? sfm_neg(t) : t;
  }

  // + (-1)^{(|a|+|b|)(|R|+|u|+|v|)} R(u,v) o nabla_W
  for (int n = 0; n < ch.coords(); ++n) {
    if (w[n].is_zero()) continue;
    SfMatrix t = sfm_scalar_op(w[n], sfm_mul(ruv, conn.gamma[n]));
    int sign = (wp[n] * ((ch.coord_parity(n) + up + vp) & 1) + abp * ((up + vp) & 1)) & 1;
    m += sign ? sfm_neg(t) : t;
  }
  return m;
}

SuperMatrix contract_two_slots(const std::vector<SuperMatrix>& table, int coords,
                               const ChartSpec& chart, const TangentVector& u,
                               const TangentVector& v, int p, int q, int gens) {
  SuperMatrix out(p, q, gens);
  for (int i = 0; i < coords; ++i) {
    if (u.comp[i].is_zero()) continue;
    int ui = chart.coord_parity(i);
    for (int j = 0; j < coords; ++j) {
      if (v.comp[j].is_zero()) continue;
      int vj = chart.coord_parity(j);
      const SuperMatrix& m = table[std::size_t(i) * coords + j];
      GrassmannElement uv = gr_mul(u.comp[i], v.comp[j]);
      for (int r = 0; r < out.dim(); ++r)
        for (int c = 0; c < out.dim(); ++c) {
          if (m.at(r, c).is_zero()) continue;
          int colp = out.row_parity(c);
          int sign = (ui * ((chart.coord_parity(j) + colp) & 1) + vj * colp) & 1;
          GrassmannElement t = gr_mul(m.at(r, c), uv);
          if (sign) t *= -1.0;
          out.at(r, c) += t;
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gauged connections

const ConnectionSpec& connection_base(const Connection& c) {
  if (auto* s = std::get_if<ConnectionSpec>(&c)) return *s;
  return std::get<GaugedConnection>(c).base;
}

const ChartSpec& connection_chart(const Connection& c) { return connection_base(c).chart; }
int connection_p(const Connection& c) { return connection_base(c).p; }
int connection_q(const Connection& c) { return connection_base(c).q; }

namespace {

void validate_even_matrix(const SfMatrix& V) {
  for (int r = 0; r < V.dim(); ++r)
    for (int c = 0; c < V.dim(); ++c) {
      const SuperFunction& f = V.at(r, c);
      if (f.is_zero()) continue;
      auto par = f.parity();
      int want = (V.row_parity(r) + V.row_parity(c)) & 1;
      if (!par || *par != want)
        fail(ErrorCode::parity_violation, "gauge matrix is not even");
    }
}

} // namespace

SuperMatrix eval_gamma(const Connection& c, int l, const NumericAssignment& at, int gens) {
  if (auto* s = std::get_if<ConnectionSpec>(&c)) return sfm_eval(s->gamma[l], at, gens);
  const auto& g = std::get<GaugedConnection>(c);
  SuperMatrix V = sfm_eval(g.V, at, gens);
  SuperMatrix Vinv = sm_inverse(V);
  SuperMatrix base = sfm_eval(g.base.gamma[l], at, gens);
  SuperMatrix dV = sfm_eval(sfm_coord_derivative(g.V, g.base.chart, l), at, gens);
  return sm_mul(sm_mul(V, base), Vinv) - sm_mul(dV, Vinv);
}

SuperMatrix eval_curvature(const Connection& c, const CurvatureTable& table, int i, int j,
                           const NumericAssignment& at, int gens) {
  SuperMatrix r = sfm_eval(table.at(i, j), at, gens);
  if (auto* g = std::get_if<GaugedConnection>(&c)) {
    SuperMatrix V = sfm_eval(g->V, at, gens);
    r = sm_mul(sm_mul(V, r), sm_inverse(V));
  }
  return r;
}

Connection gauge_transform(const Connection& c, const SfMatrix& V) {
  validate_even_matrix(V);
  if (auto* s = std::get_if<ConnectionSpec>(&c)) return GaugedConnection{*s, V};
  const auto& g = std::get<GaugedConnection>(c);
  return GaugedConnection{g.base, sfm_mul(V, g.V)};
}

} // namespace superhol
