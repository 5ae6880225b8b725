#include "superhol/grassmann.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace superhol {

namespace {
constexpr int kMaxGens = 20;

void check_gens(int gens) {
  if (gens < 0 || gens > kMaxGens)
    fail(ErrorCode::dimension_mismatch,
         "generator count out of range: " + std::to_string(gens));
}
} // namespace

int reorder_sign(Mask a, Mask b) {
  int swaps = 0;
  Mask x = b;
  while (x) {
    int j = __builtin_ctz(x);
    // generators of a strictly above j must hop over eta_j
    swaps += __builtin_popcount(a >> (j + 1));
    x &= x - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

GrassmannElement::GrassmannElement(int gens) : gens_(gens) {
  check_gens(gens);
  c_.assign(std::size_t(1) << gens, 0.0);
}

GrassmannElement::GrassmannElement(int gens, double body) : GrassmannElement(gens) {
  c_[0] = body;
}

GrassmannElement GrassmannElement::monomial(int gens, Mask m, double coeff) {
  GrassmannElement e(gens);
  if (m >= e.c_.size())
    fail(ErrorCode::index_out_of_range, "monomial mask exceeds generator count");
  e.c_[m] = coeff;
  return e;
}

GrassmannElement GrassmannElement::generator(int gens, int j) {
  if (j < 1 || j > gens)
    fail(ErrorCode::index_out_of_range, "generator index " + std::to_string(j));
  return monomial(gens, Mask(1) << (j - 1));
}

GrassmannElement GrassmannElement::soul() const {
  GrassmannElement s = *this;
  s.c_[0] = 0.0;
  return s;
}

bool GrassmannElement::is_zero() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

std::optional<int> GrassmannElement::parity() const {
  int p = -1;
  for (Mask m = 0; m < c_.size(); ++m) {
    if (c_[m] == 0.0) continue;
    int q = mask_parity(m);
    if (p < 0)
      p = q;
    else if (p != q)
      return std::nullopt;
  }
  return p < 0 ? 0 : p;
}

int GrassmannElement::nilpotency_index() const {
  if (body() != 0.0)
    fail(ErrorCode::precondition_failed, "nilpotency index needs zero body");
  if (is_zero()) return 1;
  GrassmannElement pow = *this;
  int k = 1;
  while (!pow.is_zero()) {
    pow = gr_mul(pow, *this);
    ++k;
    if (k > gens_ + 1)
      fail(ErrorCode::numeric_failure, "soul power failed to vanish");
  }
  return k;
}

double GrassmannElement::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

double GrassmannElement::l1_norm() const {
  double s = 0.0;
  for (double v : c_) s += std::fabs(v);
  return s;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  if (gens_ != o.gens_)
    fail(ErrorCode::dimension_mismatch, "generator count mismatch in sum");
  for (Mask m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  if (gens_ != o.gens_)
    fail(ErrorCode::dimension_mismatch, "generator count mismatch in difference");
  for (Mask m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

GrassmannElement gr_mul(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.gens() != b.gens())
    fail(ErrorCode::dimension_mismatch, "generator count mismatch in product");
  const int gens = a.gens();
  GrassmannElement out(gens);
  const Mask full = (Mask(1) << gens) - 1;
  for (Mask i = 0; i <= full; ++i) {
    double ai = a[i];
    if (ai == 0.0) continue;
    // walk the submasks of the complement of i, including the empty one
    Mask comp = full & ~i;
    Mask j = comp;
    for (;;) {
      double bj = b[j];
      if (bj != 0.0) out[i | j] += reorder_sign(i, j) * ai * bj;
      if (j == 0) break;
      j = (j - 1) & comp;
    }
  }
  return out;
}

std::pair<double, GrassmannElement> gr_body_soul(const GrassmannElement& a) {
  return {a.body(), a.soul()};
}

GrassmannElement gr_eta_derivative(const GrassmannElement& a, int j) {
  if (j < 1 || j > a.gens())
    fail(ErrorCode::index_out_of_range,
         "derivative index " + std::to_string(j) + " out of range");
  const Mask bit = Mask(1) << (j - 1);
  GrassmannElement out(a.gens());
  for (Mask m = 0; m < a.size(); ++m) {
    double v = a[m];
    if (v == 0.0 || !(m & bit)) continue;
    // left derivative: sign from the position of eta_j counted from the left
    int below = __builtin_popcount(m & (bit - 1));
    out[m & ~bit] += (below & 1) ? -v : v;
  }
  return out;
}

GrassmannElement gr_inverse(const GrassmannElement& a) {
  double b = a.body();
  if (b == 0.0)
    fail(ErrorCode::not_invertible, "element has zero body");
  // a = b (1 + n), n nilpotent; a^-1 = (sum (-n)^k) / b
  GrassmannElement n = a.soul() * (1.0 / b);
  GrassmannElement acc(a.gens(), 1.0);
  GrassmannElement pow(a.gens(), 1.0);
  for (int k = 1; k <= a.gens(); ++k) {
    pow = gr_mul(pow, n);
    if (pow.is_zero()) break;
    acc += ((k & 1) ? -1.0 : 1.0) * pow;
  }
  return acc * (1.0 / b);
}

GrassmannElement gr_extend(const GrassmannElement& a, int new_gens) {
  if (new_gens < a.gens())
    fail(ErrorCode::dimension_mismatch, "cannot shrink generator count");
  GrassmannElement out(new_gens);
  for (Mask m = 0; m < a.size(); ++m) out[m] = a[m];
  return out;
}

GrassmannElement gr_substitute(const GrassmannElement& a,
                               const std::vector<GrassmannElement>& images) {
  if (int(images.size()) != a.gens())
    fail(ErrorCode::dimension_mismatch, "substitution needs one image per generator");
  int out_gens = a.gens();
  for (const auto& im : images) {
    out_gens = std::max(out_gens, im.gens());
    auto p = im.parity();
    if (!p || (*p != 1 && !im.is_zero()))
      fail(ErrorCode::parity_violation, "substitution image must be odd");
  }
  GrassmannElement out(out_gens);
  for (Mask m = 0; m < a.size(); ++m) {
    double v = a[m];
    if (v == 0.0) continue;
    GrassmannElement prod(out_gens, v);
    Mask x = m;
    while (x) {
      int j = __builtin_ctz(x);
      prod = gr_mul(prod, gr_extend(images[j], out_gens));
      x &= x - 1;
    }
    out += prod;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// (cardinality, lexicographic index sequence) order on monomials
bool monomial_less(Mask a, Mask b) {
  int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
  if (ca != cb) return ca < cb;
  while (a && b) {
    int ia = __builtin_ctz(a), ib = __builtin_ctz(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::string monomial_name(Mask m) {
  std::string s;
  Mask x = m;
  while (x) {
    int j = __builtin_ctz(x);
    if (!s.empty()) s += "*";
    s += "eta" + std::to_string(j + 1);
    x &= x - 1;
  }
  return s;
}

} // namespace

std::string gr_to_string(const GrassmannElement& a, bool digits17) {
  std::vector<Mask> masks;
  for (Mask m = 0; m < a.size(); ++m)
    if (a[m] != 0.0) masks.push_back(m);
  if (masks.empty()) return "0";
  std::sort(masks.begin(), masks.end(), monomial_less);

  std::string out;
  bool first = true;
  for (Mask m : masks) {
    double v = a[m];
    double mag = std::fabs(v);
    bool neg = std::signbit(v) && v != 0.0;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string num = digits17 ? format_double17(mag) : format_double(mag);
    std::string mono = monomial_name(m);
    if (mono.empty()) {
      out += num;
    } else if (mag == 1.0) {
      out += mono;
    } else {
      out += num + "*" + mono;
    }
  }
  return out;
}

} // namespace superhol
