#include "heckemod/poly.hpp"

#include <random>

#include "doctest.h"

using namespace heckemod;

namespace {
const std::vector<std::string> kVars{"a1", "a2", "a3"};

Poly random_poly(std::mt19937_64& rng, int max_deg, int nvars) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, max_deg);
  Poly p;
  for (int t = 0; t < 6; ++t) {
    Mono m = 0;
    int budget = deg(rng);
    for (int v = 0; v < nvars && budget > 0; ++v) {
      std::uniform_int_distribution<int> e(0, budget);
      int ev = e(rng);
      m = mono_set(m, v, ev);
      budget -= ev;
    }
    p.add_term(m, coef(rng));
  }
  return p;
}
}  // namespace

TEST_CASE("monomial order is graded lexicographic") {
  Mono x = mono_set(0, 0, 1);        // a1
  Mono y2 = mono_set(0, 1, 2);       // a2^2
  Mono xy = mono_set(mono_set(0, 0, 1), 1, 1);
  CHECK(grlex_less(x, y2));          // degree first
  CHECK(grlex_less(y2, xy));         // same degree, a1 dominates
  CHECK(mono_deg(xy) == 2);
}

TEST_CASE("arithmetic basics") {
  Poly x = Poly::variable(0), y = Poly::variable(1);
  Poly f = (x + y) * (x - y);
  Poly g = x * x - y * y;
  CHECK(f == g);
  CHECK((f - g).is_zero());
  CHECK(f.degree() == 2);
  CHECK(f.is_homogeneous());
  Poly h = f + Poly::constant(3);
  CHECK(!h.is_homogeneous());
  CHECK(h.homogeneous_part(0) == Poly::constant(3));
}

TEST_CASE("exact division succeeds on multiples and rejects non-multiples") {
  Poly x = Poly::variable(0), y = Poly::variable(1);
  Poly g = 2 * x + y;
  Poly q = x * y - 3 * y * y + Poly::constant(1) * x;
  Poly f = q * g;
  CHECK(divide_exact(f, g) == q);
  CHECK_THROWS_AS(divide_exact(f + x, g), std::logic_error);
}

TEST_CASE("printing and parsing round-trip") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 50; ++iter) {
    Poly p = random_poly(rng, 4, 3);
    std::string s = poly_to_string(p, kVars);
    CHECK(poly_parse(s, kVars) == p);
  }
  CHECK(poly_to_string(Poly(), kVars) == "0");
  CHECK(poly_parse("0", kVars).is_zero());
  Poly expect = 2 * (Poly::variable(0) * Poly::variable(0) * Poly::variable(1)) -
                Poly::variable(2) + Poly::constant(5);
  CHECK(poly_parse("2*a1^2*a2 - a3 + 5", kVars) == expect);
  CHECK(poly_to_string(expect, kVars) == "2*a1^2*a2 - a3 + 5");
}

TEST_CASE("substitution is a ring map") {
  std::mt19937_64 rng(99);
  std::vector<Poly> images{Poly::variable(1) - Poly::variable(0), Poly::variable(2),
                           Poly::variable(0)};
  for (int iter = 0; iter < 20; ++iter) {
    Poly f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
    CHECK(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
    CHECK(substitute(f + g, images) == substitute(f, images) + substitute(g, images));
  }
}

TEST_CASE("coefficient overflow is detected") {
  Poly big = Poly::constant((1LL << 40));
  CHECK_THROWS_AS(big * big * big, std::overflow_error);
}
