#include "covforge/transvect.hpp"

namespace covforge {

namespace {

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class binomial(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

mpz_class falling(long m, long i) {
  mpz_class f(1);
  for (long s = 0; s < i; ++s) f *= (m - s);
  return f;
}

}  // namespace

int y_order(const Poly& F) {
  if (F.is_zero()) return 0;
  int order = -1;
  for (const auto& [m, c] : F.terms()) {
    int k = m.exponent(var_y1()) + m.exponent(var_y2());
    if (order == -1)
      order = k;
    else if (k != order)
      throw Error("transvectant input not homogeneous in Y1,Y2");
  }
  return order;
}

Poly transvectant(const Poly& F, const Poly& G, int level) {
  if (level < 0) throw Error("transvectant level must be nonnegative");
  const int m = y_order(F);
  const int k = y_order(G);
  if (level > m || level > k)
    throw Error("transvectant level " + std::to_string(level) + " exceeds min order " +
                std::to_string(std::min(m, k)));

  // dF[i] = d^r F / dY1^{r-i} dY2^i
  std::vector<Poly> dF(static_cast<std::size_t>(level) + 1);
  std::vector<Poly> dG(static_cast<std::size_t>(level) + 1);
  {
    Poly base = F;  // successively differentiated by Y2
    for (int i = 0; i <= level; ++i) {
      Poly p = base;
      for (int s = 0; s < level - i; ++s) p = p.derivative(var_y1());
      dF[static_cast<std::size_t>(i)] = p;
      if (i < level) base = base.derivative(var_y2());
    }
    base = G;
    for (int i = 0; i <= level; ++i) {
      Poly p = base;
      for (int s = 0; s < level - i; ++s) p = p.derivative(var_y1());
      dG[static_cast<std::size_t>(i)] = p;
      if (i < level) base = base.derivative(var_y2());
    }
  }

  Poly sum;
  for (int i = 0; i <= level; ++i) {
    Scalar c(binomial(level, i));
    if (i % 2 == 1) c = -c;
    sum += (dF[static_cast<std::size_t>(i)] * dG[static_cast<std::size_t>(level - i)]).scaled(c);
  }
  Scalar scale(factorial(m - level) * factorial(k - level), factorial(m) * factorial(k));
  scale.canonicalize();
  return sum.scaled(scale);
}

SemiInvariant semitransvectant(const FormContext& ctx, const SemiInvariant& f,
                               const SemiInvariant& g, int level) {
  if (level < 0 || level > std::min(f.order, g.order))
    throw Error("semitransvectant level out of range");
  Poly T = transvectant(reconstruct_covariant(ctx, f), reconstruct_covariant(ctx, g), level);
  SemiInvariant lead = leading_coefficient(ctx, T);
  if (lead.is_zero())
    return SemiInvariant{Poly::zero(), f.degree + g.degree, f.order + g.order - 2 * level};
  return lead;
}

SemiInvariant semitransvectant_direct(const FormContext& ctx, const SemiInvariant& f,
                                      const SemiInvariant& g, int level) {
  const int m = f.order, k = g.order;
  if (level < 0 || level > std::min(m, k)) throw Error("semitransvectant level out of range");

  std::vector<Poly> df(static_cast<std::size_t>(level) + 1);
  std::vector<Poly> dg(static_cast<std::size_t>(level) + 1);
  df[0] = f.poly;
  dg[0] = g.poly;
  for (int i = 1; i <= level; ++i) {
    df[static_cast<std::size_t>(i)] = derivation(ctx, df[static_cast<std::size_t>(i - 1)]);
    dg[static_cast<std::size_t>(i)] = derivation(ctx, dg[static_cast<std::size_t>(i - 1)]);
  }

  Poly sum;
  for (int i = 0; i <= level; ++i) {
    Scalar c(binomial(level, i), falling(m, i) * falling(k, level - i));
    c.canonicalize();
    if (i % 2 == 1) c = -c;
    sum += (df[static_cast<std::size_t>(i)] * dg[static_cast<std::size_t>(level - i)]).scaled(c);
  }
  const int degree = f.degree + g.degree;
  const int order = m + k - 2 * level;
  if (sum.is_zero()) return SemiInvariant{Poly::zero(), degree, order};
  return SemiInvariant{sum.primitive_normalized(), degree, order};
}

}  // namespace covforge
