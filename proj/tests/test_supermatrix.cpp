#include "doctest.h"

#include <random>

#include "superhol/supermatrix.hpp"

using namespace superhol;

namespace {

GrassmannElement rnd_elem(std::mt19937_64& rng, int gens) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GrassmannElement e(gens);
  for (Mask m = 0; m < e.size(); ++m) e[m] = d(rng);
  return e;
}

GrassmannElement rnd_homog(std::mt19937_64& rng, int gens, int parity) {
  auto e = rnd_elem(rng, gens);
  for (Mask m = 0; m < e.size(); ++m)
    if (mask_parity(m) != parity) e[m] = 0.0;
  return e;
}

// random even matrix with comfortably invertible body
SuperMatrix rnd_even(std::mt19937_64& rng, int p, int q, int gens) {
  SuperMatrix a(p, q, gens);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      a.at(r, c) = rnd_homog(rng, gens, (a.row_parity(r) + a.row_parity(c)) & 1);
  for (int i = 0; i < a.dim(); ++i) a.at(i, i) += GrassmannElement(gens, 3.0);
  return a;
}

} // namespace

TEST_CASE("parity classification") {
  SuperMatrix a(1, 1, 2);
  a.at(0, 1) = GrassmannElement::generator(2, 1);
  a.at(1, 0) = GrassmannElement::generator(2, 2);
  CHECK(a.parity() == 0); // odd blocks carrying odd elements: even matrix
  a.at(0, 0) = GrassmannElement::generator(2, 1);
  CHECK(!a.parity().has_value());

  SuperMatrix b(1, 1, 2);
  b.at(0, 1) = GrassmannElement(2, 1.0);
  CHECK(b.parity() == 1);
}

TEST_CASE("supercommutator reduces to the commutator for even inputs") {
  auto id = SuperMatrix::identity(2, 1, 2);
  std::mt19937_64 rng(3);
  auto y = rnd_even(rng, 2, 1, 2);
  CHECK(sm_supercommutator(id, y).is_zero());

  SuperMatrix d1(2, 1, 0), d2(2, 1, 0);
  for (int i = 0; i < 3; ++i) {
    d1.at(i, i) = GrassmannElement(0, double(i + 1));
    d2.at(i, i) = GrassmannElement(0, double(2 * i - 1));
  }
  CHECK(sm_supercommutator(d1, d2).is_zero());
}

TEST_CASE("supercommutator of two odd matrices is the anticommutator") {
  // X = E_{12} eta1 and Y = E_{21} eta2 on a (1|1) space are odd as matrices
  // only if the entries are even; take entries 1 to make X, Y odd.
  SuperMatrix x(1, 1, 2), y(1, 1, 2);
  x.at(0, 1) = GrassmannElement(2, 1.0);
  y.at(1, 0) = GrassmannElement(2, 1.0);
  REQUIRE(x.parity() == 1);
  REQUIRE(y.parity() == 1);
  auto lhs = sm_supercommutator(x, y);
  // oracle: entrywise XY + YX
  auto rhs = sm_mul(x, y) + sm_mul(y, x);
  CHECK(lhs == rhs);
  CHECK(lhs.at(0, 0) == GrassmannElement(2, 1.0));
  CHECK(lhs.at(1, 1) == GrassmannElement(2, 1.0));

  SuperMatrix mixed = x + SuperMatrix::identity(1, 1, 2);
  CHECK_THROWS_AS(sm_supercommutator(mixed, y), Error);
}

TEST_CASE("inverse: identity and nilpotent series") {
  auto id = SuperMatrix::identity(2, 0, 2);
  CHECK(sm_inverse(id) == id);

  // (1 + eta1 eta2) I -> (1 - eta1 eta2) I
  GrassmannElement u(2, 1.0);
  u[0b11] = 1.0;
  auto a = sm_scalar_plain(u, id);
  GrassmannElement v(2, 1.0);
  v[0b11] = -1.0;
  CHECK(sm_inverse(a) == sm_scalar_plain(v, id));
}

TEST_CASE("inverse multiplies back to the identity") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    int p = 1 + int(rng() % 2), q = int(rng() % 2);
    auto a = rnd_even(rng, p, q, 2);
    auto prod = sm_mul(a, sm_inverse(a)) - SuperMatrix::identity(p, q, 2);
    CHECK(prod.max_abs_coeff() < 1e-12);
  }
  SuperMatrix sing(1, 1, 2);
  sing.at(0, 1) = GrassmannElement::generator(2, 1);
  CHECK_THROWS_AS(sm_inverse(sing), Error);
}

TEST_CASE("exponential basics") {
  SuperMatrix z(2, 0, 2);
  CHECK(sm_exp(z) == SuperMatrix::identity(2, 0, 2));

  // nilpotent with N^2 = 0: exp(N) = I + N
  SuperMatrix n(1, 1, 2);
  n.at(0, 0) = GrassmannElement::monomial(2, 0b11, 0.7);
  REQUIRE(sm_mul(n, n).is_zero());
  auto e = sm_exp(n);
  auto expect = SuperMatrix::identity(1, 1, 2) + n;
  CHECK((e - expect).max_abs_coeff() < 1e-15);

  SuperMatrix d(2, 0, 0);
  d.at(0, 0) = GrassmannElement(0, 0.3);
  d.at(1, 1) = GrassmannElement(0, -1.2);
  auto ed = sm_exp(d);
  CHECK(ed.at(0, 0).body() == doctest::Approx(std::exp(0.3)).epsilon(1e-13));
  CHECK(ed.at(1, 1).body() == doctest::Approx(std::exp(-1.2)).epsilon(1e-13));
  CHECK(ed.at(0, 1).body() == 0.0);
}

TEST_CASE("exp(A) exp(-A) = I within 1e-12") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 25; ++it) {
    auto a = rnd_even(rng, 1, 1, 3);
    a *= 0.7;
    auto prod = sm_mul(sm_exp(a), sm_exp(-a)) - SuperMatrix::identity(1, 1, 3);
    CHECK(prod.max_abs_coeff() < 1e-12);
  }
}

TEST_CASE("trace is the ordinary diagonal sum") {
  auto id = SuperMatrix::identity(2, 1, 2);
  CHECK(sm_trace(id) == GrassmannElement(2, 3.0));

  GrassmannElement u(2, 1.0);
  u[0b11] = 1.0;
  SuperMatrix d = SuperMatrix::identity(2, 1, 2);
  d.at(0, 0) = u;
  GrassmannElement expect(2, 3.0);
  expect[0b11] = 1.0;
  CHECK(sm_trace(d) == expect);

  // cyclicity of the ordinary trace holds on purely even rank; on mixed rank
  // the odd blocks anticommute and break it
  std::mt19937_64 rng(15);
  for (int it = 0; it < 40; ++it) {
    auto a = rnd_even(rng, 3, 0, 2);
    auto b = rnd_even(rng, 3, 0, 2);
    auto diff = sm_trace(sm_mul(a, b)) - sm_trace(sm_mul(b, a));
    CHECK(diff.max_abs_coeff() < 1e-12);
  }
  {
    SuperMatrix a(1, 1, 2), b(1, 1, 2);
    a.at(0, 1) = GrassmannElement::generator(2, 1);
    b.at(1, 0) = GrassmannElement::generator(2, 2);
    auto diff = sm_trace(sm_mul(a, b)) - sm_trace(sm_mul(b, a));
    CHECK(diff.max_abs_coeff() > 0.5);
  }
}
