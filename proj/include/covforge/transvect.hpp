#ifndef COVFORGE_TRANSVECT_HPP
#define COVFORGE_TRANSVECT_HPP

#include "covforge/sl2.hpp"

namespace covforge {

// Order in Y1,Y2 of a Y-homogeneous polynomial. Throws if not homogeneous.
int y_order(const Poly& F);

// Classical transvectant of covariants F (order m) and G (order k):
//   (m-r)!(k-r)!/(m!k!) * sum_i (-1)^i binom(r,i)
//       d^r F / dY1^{r-i} dY2^i  *  d^r G / dY1^i dY2^{r-i}
// Result has order m+k-2r. Throws if r > min(m,k) or inputs are not
// Y-homogeneous.
Poly transvectant(const Poly& F, const Poly& G, int level);

// Semitransvectant through reconstruction: the leading coefficient of the
// transvectant of the reconstructed covariants, primitive-normalized.
// A zero result is a legal output, not an error.
SemiInvariant semitransvectant(const FormContext& ctx, const SemiInvariant& f,
                               const SemiInvariant& g, int level);

// Same value computed without leaving the coefficient algebra:
//   sum_i (-1)^i binom(r,i) D^i(f)/[m]_i * D^{r-i}(g)/[k]_{r-i}
// with [m]_i the falling factorial. Used as the fast path; agrees with
// semitransvectant after normalization.
SemiInvariant semitransvectant_direct(const FormContext& ctx, const SemiInvariant& f,
                                      const SemiInvariant& g, int level);

}  // namespace covforge

#endif  // COVFORGE_TRANSVECT_HPP
