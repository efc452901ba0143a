#include "covforge/sl2.hpp"

namespace covforge {

FormContext::FormContext(int degree) : d_(degree) {
  if (degree < 1 || degree > 12)
    throw Error("form degree must be in 1..12, got " + std::to_string(degree));
}

void FormContext::build() const {
  if (built_) return;
  z_defs_.clear();
  x_in_z_.clear();
  std::map<VarId, Poly> lower;  // x_k -> x_in_z(k) for k below the current i
  for (int i = 2; i <= d_; ++i) {
    // z_i = sum_{k=0}^{i-2} (-1)^k binom(i,k) x_{i-k} x1^k t^{i-k-1}
    //       + (i-1)(-1)^{i+1} x1^i
    Poly z;
    for (int k = 0; k <= i - 2; ++k) {
      mpz_class binom_ik;
      mpz_bin_uiui(binom_ik.get_mpz_t(), i, k);
      Scalar c(binom_ik);
      if (k % 2 == 1) c = -c;
      Monomial m = Monomial::variable(var_x(i - k))
                       .times(Monomial::variable(var_x(1), k))
                       .times(Monomial::variable(var_t(), i - k - 1));
      z.add_term(m, c);
    }
    Scalar tail(i - 1);
    if (i % 2 == 0) tail = -tail;  // (-1)^{i+1}
    z.add_term(Monomial::variable(var_x(1), i), tail);
    z_defs_.push_back(z);

    // Solve for x_i: x_i t^{i-1} = z_i - (rest of the definition), with the
    // lower x's already rewritten in z-coordinates.
    Poly rest = z;
    rest.add_term(Monomial::variable(var_x(i)).times(Monomial::variable(var_t(), i - 1)),
                  Scalar(-1));
    Poly xi = Poly::variable(var_z(i)) - rest.substituted(lower);
    xi = xi * Poly::variable(var_t(), 1 - i);
    x_in_z_.push_back(xi);
    lower[var_x(i)] = xi;
  }
  built_ = true;
}

const Poly& FormContext::z_definition(int i) const {
  if (i < 2 || i > d_) throw Error("z index out of range");
  build();
  return z_defs_[static_cast<std::size_t>(i - 2)];
}

const Poly& FormContext::x_in_z(int i) const {
  if (i < 2 || i > d_) throw Error("x_in_z index out of range");
  build();
  return x_in_z_[static_cast<std::size_t>(i - 2)];
}

Poly derivation(const FormContext& ctx, const Poly& p) {
  const int d = ctx.degree();
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.has_kind(VarKind::Y)) throw Error("derivation input must be free of Y1,Y2");
    for (const auto& [var, exp] : m) {
      int idx;
      if (var.kind == VarKind::T)
        idx = 0;
      else if (var.kind == VarKind::X)
        idx = var.index;
      else
        throw Error("derivation input must be in t,x coordinates");
      if (idx >= d) continue;  // x_d is annihilated
      VarId next = var_x(idx + 1);
      Monomial shifted = m.with_exponent(var, exp - 1);
      shifted = shifted.with_exponent(next, shifted.exponent(next) + 1);
      out.add_term(shifted, c * exp * (d - idx));
    }
  }
  return out;
}

int covariant_order(const FormContext& ctx, const Poly& p) {
  if (p.is_zero()) throw Error("order of zero polynomial");
  if (p.has_kind(VarKind::Y)) throw Error("order input must be free of Y1,Y2");
  const long bound = static_cast<long>(std::max(1, p.total_degree_tx())) * ctx.degree() + 1;
  Poly q = derivation(ctx, p);
  int ord = 0;
  while (!q.is_zero()) {
    ++ord;
    if (ord > bound)
      throw Error("derivation does not terminate: input is not a semi-invariant");
    q = derivation(ctx, q);
  }
  return ord;
}

Poly reconstruct_covariant(const FormContext& ctx, const Poly& a) {
  const int ord = a.is_zero() ? 0 : covariant_order(ctx, a);
  Poly F;
  Poly di = a;
  mpz_class fact(1);
  for (int i = 0; i <= ord; ++i) {
    if (i > 0) {
      di = derivation(ctx, di);
      fact *= i;
    }
    Poly ymon = Poly::variable(var_y1(), ord - i) * Poly::variable(var_y2(), i);
    Scalar inv_fact(mpz_class(1), fact);
    inv_fact.canonicalize();
    F += di.scaled(inv_fact) * ymon;
  }
  return F;
}

Poly reconstruct_covariant(const FormContext& ctx, const SemiInvariant& a) {
  return reconstruct_covariant(ctx, a.poly);
}

SemiInvariant leading_coefficient(const FormContext& ctx, const Poly& F) {
  if (F.is_zero()) return SemiInvariant{};
  int order = -1;
  for (const auto& [m, c] : F.terms()) {
    int k = m.exponent(var_y1()) + m.exponent(var_y2());
    if (order == -1)
      order = k;
    else if (k != order)
      throw Error("leading_coefficient: input not homogeneous in Y1,Y2");
  }
  Poly lead;
  for (const auto& [m, c] : F.terms()) {
    if (m.exponent(var_y2()) != 0) continue;
    lead.add_term(m.with_exponent(var_y1(), 0), c);
  }
  if (lead.is_zero()) return SemiInvariant{Poly::zero(), 0, order};
  return SemiInvariant{lead.primitive_normalized(), lead.total_degree_tx(), order};
}

SemiInvariant make_semiinvariant(const FormContext& ctx, const Poly& p) {
  if (p.is_zero()) return SemiInvariant{};
  Poly n = p.primitive_normalized();
  return SemiInvariant{n, n.total_degree_tx(), covariant_order(ctx, n)};
}

Poly to_z_form(const FormContext& ctx, const Poly& p) {
  if (p.has_kind(VarKind::Y) || p.has_kind(VarKind::Z))
    throw Error("to_z_form expects a polynomial in t,x only");
  std::map<VarId, Poly> bindings;
  for (int i = 2; i <= ctx.degree(); ++i) bindings[var_x(i)] = ctx.x_in_z(i);
  return p.substituted(bindings);
}

bool is_semiinvariant(const FormContext& ctx, const Poly& p) {
  if (p.is_zero()) return true;
  if (p.has_negative_t()) return false;
  Poly z = to_z_form(ctx, p);
  for (const auto& [m, c] : z.terms())
    if (m.exponent(var_x(1)) != 0) return false;
  return true;
}

}  // namespace covforge
