#ifndef COVFORGE_SL2_HPP
#define COVFORGE_SL2_HPP

#include "covforge/poly.hpp"

#include <memory>
#include <vector>

namespace covforge {

// Ambient binary form of degree d, with the reduced z-coordinate system
// cached. The coefficients of the generic form are t (= x0) and x1..xd with
// binomial normalization, so the weight-raising derivation below satisfies
// D^i(t)/i! = binom(d,i) * x_i.
class FormContext {
 public:
  explicit FormContext(int degree);

  int degree() const { return d_; }

  // z_i as a polynomial in t, x1..xi (degree i, weight i), i in 2..d.
  const Poly& z_definition(int i) const;
  // x_i rewritten as an element of C[t, x1, z2..zd][1/t], i in 2..d.
  const Poly& x_in_z(int i) const;

 private:
  int d_;
  mutable std::vector<Poly> z_defs_;  // index i-2
  mutable std::vector<Poly> x_in_z_;  // index i-2
  mutable bool built_ = false;
  void build() const;
};

// A semi-invariant: leading coefficient of a covariant. The payload is
// primitive-normalized and free of Y and of negative t-powers; degree is the
// total degree in t,x and order the D-nilpotency index.
struct SemiInvariant {
  Poly poly;
  int degree = 0;
  int order = 0;

  bool is_zero() const { return poly.is_zero(); }
};

// The weight-raising derivation sum (d-i) x_{i+1} d/dx_i with x0 = t.
Poly derivation(const FormContext& ctx, const Poly& p);

// Largest s with D^s(p) != 0. Throws on zero input or when the iteration
// exceeds the degree*d safety bound (the input is then not a semi-invariant).
int covariant_order(const FormContext& ctx, const Poly& p);

// Robert reconstruction: sum D^i(a)/i! Y1^(ord-i) Y2^i, the covariant whose
// leading coefficient is a.
Poly reconstruct_covariant(const FormContext& ctx, const SemiInvariant& a);
Poly reconstruct_covariant(const FormContext& ctx, const Poly& a);

// Leading coefficient of a covariant: the coefficient of Y1^k for a poly
// homogeneous of degree k in Y1,Y2, primitive-normalized, with the order
// recorded from the exponent. Throws if F is not Y-homogeneous.
SemiInvariant leading_coefficient(const FormContext& ctx, const Poly& F);

// Wraps a raw polynomial as a SemiInvariant (normalizes, computes metadata).
SemiInvariant make_semiinvariant(const FormContext& ctx, const Poly& p);

// Rewrites p in the coordinates t, x1, z2..zd (Laurent in t).
Poly to_z_form(const FormContext& ctx, const Poly& p);

// Membership in kappa(C_d) = C[t,z][1/t] intersect C[X_d]: p has no negative
// t-power and its z-form is free of x1.
bool is_semiinvariant(const FormContext& ctx, const Poly& p);

}  // namespace covforge

#endif  // COVFORGE_SL2_HPP
