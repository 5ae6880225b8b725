#include "doctest.h"

#include <cmath>
#include <random>

#include "superhol/parse.hpp"
#include "superhol/superfunction.hpp"

using namespace superhol;

namespace {

ParseContext ctx_nmg(int n, int m, int g, bool t = false, bool s = false) {
  ParseContext c;
  c.num_x = n;
  c.num_theta = m;
  c.num_eta = g;
  c.allow_t = t;
  c.allow_s = s;
  return c;
}

// random canonical expression built through the smart constructors
Expr random_expr(std::mt19937_64& rng, int num_x, int depth) {
  std::uniform_real_distribution<double> dc(-3.0, 3.0);
  auto leaf = [&]() -> Expr {
    if (rng() % 2) return ex_const(std::round(dc(rng) * 8.0) / 8.0);
    return ex_var(1 + int(rng() % num_x));
  };
  if (depth == 0) return leaf();
  switch (rng() % 6) {
    case 0: return ex_add(random_expr(rng, num_x, depth - 1), random_expr(rng, num_x, depth - 1));
    case 1: return ex_sub(random_expr(rng, num_x, depth - 1), random_expr(rng, num_x, depth - 1));
    case 2: return ex_mul(random_expr(rng, num_x, depth - 1), random_expr(rng, num_x, depth - 1));
    case 3: return ex_pow(random_expr(rng, num_x, depth - 1), 1 + int(rng() % 3));
    case 4: {
      Func f = static_cast<Func>(rng() % 4); // sqrt kept out of random evals
      return ex_func(f, random_expr(rng, num_x, depth - 1));
    }
    default: return ex_div(random_expr(rng, num_x, depth - 1), 1.0 + double(rng() % 4));
  }
}

SuperFunction random_superfunction(std::mt19937_64& rng, int n, int m, int g) {
  SuperFunction f;
  int terms = 1 + int(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    Mask th = Mask(rng()) & ((Mask(1) << m) - 1);
    Mask eta = Mask(rng()) & ((Mask(1) << g) - 1);
    f += SuperFunction::monomial(th, eta, random_expr(rng, n, 2));
  }
  return f;
}

} // namespace

TEST_CASE("parse basics and canonical signs") {
  auto c = ctx_nmg(2, 2, 2);
  auto r1 = parse_superfunction("th1*th2", c);
  CHECK(r1.value == SuperFunction::monomial(0b11, 0, ex_const(1.0)));

  auto r2 = parse_superfunction("th2*th1", c);
  CHECK(r2.value == SuperFunction::monomial(0b11, 0, ex_const(-1.0)));

  auto r3 = parse_superfunction("sin(x1)*eta1 + 2", c);
  SuperFunction expect = SuperFunction::constant(2.0);
  expect += SuperFunction::monomial(0, 0b01, ex_func(Func::sin, ex_var(1)));
  CHECK(r3.value == expect);
}

TEST_CASE("parse errors carry positions; odd powers warn") {
  auto c = ctx_nmg(1, 1, 1);
  CHECK_THROWS_WITH_AS(parse_superfunction("x1 + ", c).value,
                       doctest::Contains("syntax error"), Error);
  CHECK_THROWS_WITH_AS(parse_superfunction("x2", c).value,
                       doctest::Contains("unknown identifier"), Error);
  CHECK_THROWS_AS(parse_superfunction("x1/x1", c), Error);
  CHECK_THROWS_AS(parse_superfunction("x1/0", c), Error);
  CHECK_THROWS_AS(parse_superfunction("T1*x1", c), Error);

  auto r = parse_superfunction("th1^2", c);
  CHECK(r.value.is_zero());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("identically zero") != std::string::npos);

  // mixed-parity base powers are fine
  auto r2 = parse_superfunction("(2 + th1*eta1)^2", c);
  CHECK(!r2.value.is_zero());
}

TEST_CASE("frame-valued parse tags left coefficients") {
  ParseContext c = ctx_nmg(1, 1, 1);
  c.num_frames = 2;
  c.frame_parity = {0, 1};
  auto r = parse_framed("T1*th1 + T2*0.5", c);
  CHECK(r.scalar.is_zero());
  CHECK(r.frames.at(1) == SuperFunction::monomial(0b1, 0, ex_const(1.0)));
  CHECK(r.frames.at(2) == SuperFunction::constant(0.5));

  // the frame symbol is a positionless tag: factors around it multiply into
  // the left coefficient in their written order
  auto r2 = parse_framed("th1*T2", c);
  CHECK(r2.frames.at(2) == SuperFunction::monomial(0b1, 0, ex_const(1.0)));
  auto r2b = parse_framed("T2*th1", c);
  CHECK(r2b.frames.at(2) == SuperFunction::monomial(0b1, 0, ex_const(1.0)));
  auto r3 = parse_framed("x1*T1", c);
  CHECK(r3.frames.at(1) == SuperFunction::scalar(ex_var(1)));
  auto r4 = parse_framed("th1*T2*th2", c);
  CHECK(r4.frames.at(2) == SuperFunction::monomial(0b11, 0, ex_const(1.0)));

  CHECK_THROWS_AS(parse_framed("T1*T2", c), Error);
  CHECK_THROWS_AS(parse_framed("sin(T1)", c), Error);
}

TEST_CASE("superderivative positional signs") {
  auto c = ctx_nmg(1, 2, 1);
  auto f = parse_superfunction("th1*th2", c).value;
  CHECK(sf_partial_theta(f, 1) == SuperFunction::monomial(0b10, 0, ex_const(1.0)));
  CHECK(sf_partial_theta(f, 2) == SuperFunction::monomial(0b01, 0, ex_const(-1.0)));

  auto g = parse_superfunction("sin(x1)*th1", c).value;
  auto dg = sf_partial(g, 1);
  CHECK(dg == SuperFunction::monomial(0b01, 0, ex_func(Func::cos, ex_var(1))));

  // the eta block is passed with a parity sign
  auto h = parse_superfunction("eta1*th1", c).value;
  CHECK(sf_partial_theta(h, 1) == SuperFunction::monomial(0, 0b1, ex_const(-1.0)));
}

TEST_CASE("left Leibniz rule for odd derivatives on random homogeneous factors") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    auto f = random_superfunction(rng, 2, 3, 2);
    auto g = random_superfunction(rng, 2, 3, 2);
    auto [fe, fo] = f.parity_split();
    auto fh = (rng() % 2) ? fe : fo;
    int pf = fh.is_odd() ? 1 : 0;
    int j = 1 + int(rng() % 3);
    auto lhs = sf_partial_theta(sf_mul(fh, g), j);
    auto rhs = sf_mul(sf_partial_theta(fh, j), g);
    auto second = sf_mul(fh, sf_partial_theta(g, j));
    rhs += pf ? sf_neg(second) : second;
    auto diff = lhs - rhs;
    RealEnv env = [&rng](int) { return 0.7; };
    CHECK(sf_coeff_distance(lhs, rhs, env) < 1e-12);
  }
}

TEST_CASE("theta and eta derivatives anticommute") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 100; ++it) {
    auto f = random_superfunction(rng, 1, 3, 3);
    int i = 1 + int(rng() % 3), j = 1 + int(rng() % 3);
    CHECK(sf_partial_theta(sf_partial_theta(f, i), j) ==
          sf_neg(sf_partial_theta(sf_partial_theta(f, j), i)));
    CHECK(sf_partial_eta(sf_partial_eta(f, i), j) ==
          sf_neg(sf_partial_eta(sf_partial_eta(f, j), i)));
    CHECK(sf_partial_eta(sf_partial_theta(f, i), j) ==
          sf_neg(sf_partial_theta(sf_partial_eta(f, j), i)));
  }
}

TEST_CASE("numeric pullback: Taylor correctness") {
  auto c = ctx_nmg(1, 2, 3);

  NumericAssignment a;
  a.gens = 3;
  GrassmannElement x1(3, 2.0);
  x1[0b011] = 1.0; // 2 + eta1 eta2
  a.even[1] = x1;

  auto f = parse_superfunction("x1", c).value;
  CHECK(sf_eval(f, a) == x1);

  auto g = parse_superfunction("sin(x1)", c).value;
  auto val = sf_eval(g, a);
  GrassmannElement expect(3, std::sin(2.0));
  expect[0b011] = std::cos(2.0);
  CHECK((val - expect).max_abs_coeff() < 1e-15);

  // f = th1 th2 with th1 -> eta1, th2 -> eta2
  auto h = parse_superfunction("th1*th2", c).value;
  NumericAssignment b;
  b.gens = 3;
  b.theta = {GrassmannElement::generator(3, 1), GrassmannElement::generator(3, 2)};
  CHECK(sf_eval(h, b) == GrassmannElement::monomial(3, 0b011));

  // parity violations are rejected
  NumericAssignment bad;
  bad.gens = 3;
  bad.even[1] = GrassmannElement::generator(3, 1);
  CHECK_THROWS_AS(sf_eval(parse_superfunction("x1", c).value, bad), Error);
}

TEST_CASE("numeric pullback respects odd nilpotency exactly") {
  auto c = ctx_nmg(0, 1, 2);
  auto f = parse_superfunction("th1", c).value;
  NumericAssignment a;
  a.gens = 2;
  GrassmannElement o(2);
  o[0b01] = 0.3;
  o[0b10] = -1.7;
  a.theta = {o};
  auto v = sf_eval(sf_mul(f, f), a);
  CHECK(v.is_zero());
}

TEST_CASE("symbolic composition agrees with numeric evaluation") {
  std::mt19937_64 rng(41);
  auto c = ctx_nmg(2, 2, 2);
  auto f = parse_superfunction("sin(x1*x2)*th1 + x2^2*eta1*th2 + exp(x1)", c).value;

  // x1 -> t^2 + eta1 eta2, x2 -> 1 + t, th1 -> t*eta1, th2 -> eta2
  SymbolicAssignment sa;
  sa.even[1] = SuperFunction::scalar(ex_pow(ex_var(kVarT), 2)) +
               SuperFunction::monomial(0, 0b11, ex_const(1.0));
  sa.even[2] = SuperFunction::scalar(ex_add(ex_const(1.0), ex_var(kVarT)));
  sa.theta = {SuperFunction::monomial(0, 0b01, ex_var(kVarT)),
              SuperFunction::monomial(0, 0b10, ex_const(1.0))};
  auto composed = sf_compose(f, sa);

  for (int it = 0; it < 20; ++it) {
    double t = -1.0 + 2.0 * double(rng() % 1000) / 1000.0;
    RealEnv env = [t](int v) { return v == kVarT ? t : 0.0; };

    // numeric route: evaluate the assignment at t, then pull back numerically
    NumericAssignment na;
    na.gens = 2;
    GrassmannElement x1(2, t * t);
    x1[0b11] = 1.0;
    na.even[1] = x1;
    na.even[2] = GrassmannElement(2, 1.0 + t);
    GrassmannElement th1(2);
    th1[0b01] = t;
    na.theta = {th1, GrassmannElement::generator(2, 2)};
    auto direct = sf_eval(f, na);

    // composed route: evaluate the composed superfunction at t
    auto via = sf_eval_real_vars(composed, env, 2);
    CHECK((direct - via).max_abs_coeff() < 1e-12);
  }
}

TEST_CASE("print/parse round-trip is the identity on canonical forms") {
  std::mt19937_64 rng(43);
  auto c = ctx_nmg(2, 3, 3);
  for (int it = 0; it < 1000; ++it) {
    auto f = random_superfunction(rng, 2, 3, 3);
    std::string s = sf_print(f);
    auto g = parse_superfunction(s, c).value;
    if (!(f == g)) {
      CAPTURE(s);
      CAPTURE(sf_print(g));
      CHECK(f == g);
      break;
    }
  }
  CHECK(sf_print(SuperFunction::zero()) == "0");
  CHECK(sf_print(SuperFunction::monomial(0b11, 0, ex_const(-1.0))) == "-th1*th2");
}

TEST_CASE("symbolic derivative matches central finite differences") {
  std::mt19937_64 rng(47);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 120; ++it) {
    Expr e = random_expr(rng, 2, 3);
    Expr d1 = ex_diff(e, 1);
    double x1 = 0.3 + 0.4 * double(rng() % 100) / 100.0;
    double x2 = -0.8 + 1.6 * double(rng() % 100) / 100.0;
    auto env_at = [&](double xx) {
      return RealEnv([xx, x2](int v) { return v == 1 ? xx : x2; });
    };
    double h = 1e-5;
    double f1 = (ex_eval(e, env_at(x1 + h)) - ex_eval(e, env_at(x1 - h))) / (2 * h);
    double f2 = (ex_eval(e, env_at(x1 + h / 2)) - ex_eval(e, env_at(x1 - h / 2))) / h;
    double fd = (4.0 * f2 - f1) / 3.0; // one Richardson level
    double sym = ex_eval(d1, env_at(x1));
    if (std::fabs(sym) < 1e-3) continue; // relative comparison needs scale
    ++checked;
    CHECK(std::fabs(fd - sym) / std::max(1.0, std::fabs(sym)) < 1e-6);
  }
  CHECK(checked >= 100);
}

TEST_CASE("grassmann evaluation of sqrt and tanh uses correct jets") {
  auto c = ctx_nmg(1, 0, 2);
  NumericAssignment a;
  a.gens = 2;
  GrassmannElement x1(2, 4.0);
  x1[0b01] = 1.0;
  x1[0b10] = 2.0; // mixed odd soul parts make soul^2 = 2*2*eta1eta2 ... check series order 2
  a.even[1] = x1;
  // soul = eta1 + 2 eta2 is odd: x1 is not even; use an even soul instead
  GrassmannElement x2(2, 4.0);
  x2[0b11] = 0.5;
  a.even[1] = x2;
  auto f = parse_superfunction("sqrt(x1)", c).value;
  auto v = sf_eval(f, a);
  // sqrt(4 + 0.5 e12) = 2 + 0.5/(2*2) e12
  CHECK(v.body() == doctest::Approx(2.0));
  CHECK(v[0b11] == doctest::Approx(0.125));

  auto g = parse_superfunction("tanh(x1)", c).value;
  auto w = sf_eval(g, a);
  double y = std::tanh(4.0);
  CHECK(w.body() == doctest::Approx(y));
  CHECK(w[0b11] == doctest::Approx((1.0 - y * y) * 0.5));
}
