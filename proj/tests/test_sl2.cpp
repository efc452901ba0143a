#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covforge/sl2.hpp"

using namespace covforge;

namespace {

Poly P(const std::string& text, int d = 7) { return Poly::parse(text, d); }

const FormContext& ctx7() {
  static FormContext ctx(7);
  return ctx;
}

}  // namespace

TEST_CASE("derivation basics for d = 7") {
  CHECK(derivation(ctx7(), P("t")) == P("7*x1"));
  CHECK(derivation(ctx7(), Poly::constant(5)).is_zero());
  // D^2(t)/2! = binom(7,2) x2
  Poly d2 = derivation(ctx7(), derivation(ctx7(), P("t")));
  CHECK(d2.scaled(Scalar(1, 2)) == P("21*x2"));
  // x_d is annihilated
  CHECK(derivation(ctx7(), P("x7")).is_zero());
}

TEST_CASE("derivation iterates match binomial coefficients") {
  // D^i(t)/i! = binom(7,i) x_i for all i
  Poly di = P("t");
  mpz_class fact(1);
  for (int i = 1; i <= 7; ++i) {
    di = derivation(ctx7(), di);
    fact *= i;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 7, static_cast<unsigned long>(i));
    Scalar inv(mpz_class(1), fact);
    inv.canonicalize();
    CHECK(di.scaled(inv) == Poly::variable(var_x(i)).scaled(Scalar(binom)));
  }
  CHECK(derivation(ctx7(), di).is_zero());
}

TEST_CASE("covariant_order on the low-degree generators") {
  CHECK(covariant_order(ctx7(), P("t")) == 7);
  CHECK(covariant_order(ctx7(), P("x2*t - x1^2")) == 10);                         // dv3
  CHECK(covariant_order(ctx7(), P("x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2")) == 2);  // dv2
  CHECK(covariant_order(ctx7(), P("x4*t - 4*x1*x3 + 3*x2^2")) == 6);              // dv1
  CHECK_THROWS_AS(covariant_order(ctx7(), Poly::zero()), Error);
  // Not in the semi-invariant algebra: Laurent input never terminates.
  CHECK_THROWS_AS(covariant_order(ctx7(), P("t^-1")), Error);
}

TEST_CASE("ord(t) = d for every supported degree") {
  for (int d = 1; d <= 12; ++d) {
    FormContext ctx(d);
    CHECK(covariant_order(ctx, P("t", d)) == d);
  }
}

TEST_CASE("reconstruction of the base form") {
  Poly F = reconstruct_covariant(ctx7(), P("t"));
  Poly expected = P("t") * Poly::variable(var_y1(), 7);
  for (int i = 1; i <= 7; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 7, static_cast<unsigned long>(i));
    expected += (Poly::variable(var_x(i)) * Poly::variable(var_y1(), 7 - i) *
                 Poly::variable(var_y2(), i))
                    .scaled(Scalar(binom));
  }
  CHECK(F == expected);
}

TEST_CASE("reconstruction of a constant and the section property") {
  CHECK(reconstruct_covariant(ctx7(), Poly::constant(3)) == Poly::constant(3));

  SemiInvariant dv1 = make_semiinvariant(ctx7(), P("x4*t - 4*x1*x3 + 3*x2^2"));
  SemiInvariant back = leading_coefficient(ctx7(), reconstruct_covariant(ctx7(), dv1));
  CHECK(back.poly == dv1.poly);
  CHECK(back.order == dv1.order);
  CHECK(back.degree == dv1.degree);

  SemiInvariant t_back = leading_coefficient(ctx7(), reconstruct_covariant(ctx7(), P("t")));
  CHECK(t_back.poly == P("t"));
}

TEST_CASE("leading_coefficient records order from the exponent") {
  SemiInvariant s = leading_coefficient(ctx7(), Poly::variable(var_y1(), 3));
  CHECK(s.poly == Poly::constant(1));
  CHECK(s.order == 3);
  CHECK_THROWS_AS(leading_coefficient(ctx7(), P("Y1^2 + Y2")), Error);
}

TEST_CASE("z coordinates: definitions and to_z_form") {
  CHECK(ctx7().z_definition(2) == P("x2*t - x1^2"));
  CHECK(ctx7().z_definition(3) == P("x3*t^2 - 3*x2*x1*t + 2*x1^3"));

  CHECK(to_z_form(ctx7(), P("x2*t - x1^2")) == P("z2"));
  CHECK(to_z_form(ctx7(), P("t")) == P("t"));
  // dv1 in z coordinates: (3 z2^2 + z4)/t^2
  CHECK(to_z_form(ctx7(), P("x4*t - 4*x1*x3 + 3*x2^2")) == P("3*z2^2*t^-2 + z4*t^-2"));
}

TEST_CASE("is_semiinvariant") {
  CHECK(is_semiinvariant(ctx7(), P("x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2")));
  CHECK_FALSE(is_semiinvariant(ctx7(), P("x1")));
  // z3/t = x3 t - 3 x1 x2 + 2 x1^3 t^-1: x1-free in z coordinates but with a
  // genuine negative t power, so it sits outside C[X_d].
  Poly z3_over_t = P("t*x3 - 3*x1*x2 + 2*x1^3*t^-1");
  CHECK(to_z_form(ctx7(), z3_over_t) == P("z3*t^-1"));
  CHECK_FALSE(is_semiinvariant(ctx7(), z3_over_t));
  // Dropping the Laurent tail leaves an x1 residue in z coordinates.
  Poly truncated = P("t*x3 - 3*x1*x2 + 2*x1^3");
  Poly truncated_z = to_z_form(ctx7(), truncated);
  bool has_x1 = false;
  for (const auto& [m, c] : truncated_z.terms())
    if (m.exponent(var_x(1)) != 0) has_x1 = true;
  CHECK(has_x1);
  CHECK_FALSE(is_semiinvariant(ctx7(), truncated));
}

TEST_CASE("the z-coordinate conjugate of the derivation matches the d=7 operator") {
  // Expected coefficients of d/dz_i of the displayed degree-7 operator.
  const std::map<int, std::string> expected = {
      {2, "10*x1*z2*t^-1 + 5*z3*t^-1"},
      {3, "15*x1*z3*t^-1 - 18*z2^2*t^-1 + 4*z4*t^-1"},
      {4, "20*x1*z4*t^-1 - 24*z2*z3*t^-1 + 3*z5*t^-1"},
      {5, "25*x1*z5*t^-1 - 30*z2*z4*t^-1 + 2*z6*t^-1"},
      {6, "30*x1*z6*t^-1 - 36*z2*z5*t^-1 + z7*t^-1"},
      {7, "35*x1*z7*t^-1 - 42*z2*z6*t^-1"},
  };
  CHECK(derivation(ctx7(), P("t")) == P("7*x1"));
  for (const auto& [i, text] : expected) {
    Poly dz = derivation(ctx7(), ctx7().z_definition(i));
    CHECK_MESSAGE(to_z_form(ctx7(), dz) == P(text), "d/dz coefficient for z", i);
  }
}

TEST_CASE("nilpotency order equals the weight bookkeeping on semi-invariants") {
  // Bihomogeneous semi-invariant of degree i, weight w: order d*i - 2w; the
  // derivation raises weight by one, so the bookkeeping order drops by two.
  const std::vector<std::string> semis = {"t", "x2*t - x1^2", "x4*t - 4*x1*x3 + 3*x2^2",
                                          "x6*t - 6*x1*x5 + 15*x2*x4 - 10*x3^2"};
  for (const auto& text : semis) {
    Poly p = P(text);
    long w = p.weight();
    int deg = p.total_degree_tx();
    CHECK(covariant_order(ctx7(), p) == 7 * deg - 2 * w);
    Poly dp = derivation(ctx7(), p);
    if (!dp.is_zero()) {
      CHECK(dp.weight() == w + 1);
      CHECK(7 * dp.total_degree_tx() - 2 * dp.weight() == covariant_order(ctx7(), p) - 2);
    }
  }
}

TEST_CASE("unipotent covariance of reconstructed covariants") {
  // Read the transformed coefficients (t', x_i') off from F0(Y1, Y2 + c Y1),
  // F0 the base form; then F(t',x'; Y1,Y2) == F(t,x; Y1, Y2 + c Y1) for every
  // reconstructed covariant F.
  const Scalar c(3, 2);
  Poly base = reconstruct_covariant(ctx7(), P("t"));
  std::map<VarId, Poly> shift{
      {var_y2(), Poly::variable(var_y2()) + Poly::variable(var_y1()).scaled(c)}};
  Poly shifted = base.substituted(shift);

  std::map<VarId, Poly> coeff_transform;
  for (int i = 0; i <= 7; ++i) {
    Poly pick;
    for (const auto& [m, coef] : shifted.terms()) {
      if (m.exponent(var_y1()) == 7 - i && m.exponent(var_y2()) == i)
        pick.add_term(m.with_exponent(var_y1(), 0).with_exponent(var_y2(), 0), coef);
    }
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 7, static_cast<unsigned long>(i));
    Scalar inv(mpz_class(1), binom);
    inv.canonicalize();
    coeff_transform[i == 0 ? var_t() : var_x(i)] = pick.scaled(inv);
  }

  for (const auto& text : {"t", "x4*t - 4*x1*x3 + 3*x2^2", "x2*t - x1^2"}) {
    Poly F = reconstruct_covariant(ctx7(), P(text));
    CHECK(F.substituted(coeff_transform) == F.substituted(shift));
  }
}
