#ifndef COVFORGE_COUNTING_HPP
#define COVFORGE_COUNTING_HPP

#include "covforge/registry.hpp"

#include <cstdint>
#include <vector>

namespace covforge {

// Truncated integer power series in T, exact under truncation. Division by
// (1 - T^k) is geometric-series accumulation, so everything stays integral.
class SeriesPoly {
 public:
  explicit SeriesPoly(int bound);  // coefficients of T^0..T^bound

  int bound() const { return static_cast<int>(coeff_.size()) - 1; }
  long long coefficient(int n) const;

  void multiply_one_minus_power(int k);  // *= (1 - T^k)
  void divide_one_minus_power(int k);    // /= (1 - T^k)

 private:
  std::vector<long long> coeff_;
};

// dim C_{i,j} for the degree-d form: 0 when d*i - j is odd or negative, else
// the coefficient of T^{(d*i-j)/2} in
//   (1-T^{d+1})...(1-T^{d+i}) / ((1-T^2)...(1-T^i)).
long long cs_dimension(int d, int i, int j);

// A product monomial over registry generators: (record index, exponent)
// pairs, at least two factors in total, in insertion/lex-ascending order.
struct ProductTerm {
  std::vector<std::pair<int, int>> factors;
};

// All product monomials of total degree i and total order j over generators
// of degree < i. Requires the registry complete through degree i-1.
std::vector<ProductTerm> enumerate_product_terms(const Registry& reg, int i, int j);

// Number of product monomials (elements of (C+^2)_{i,j}).
long long sigma_count(const Registry& reg, int i, int j);

// Materialized product polynomials, one per monomial, in enumeration order.
std::vector<SemiInvariant> enumerate_products(const FormContext& ctx, const Registry& reg,
                                              int i, int j);

// Evaluates one product term to its polynomial.
SemiInvariant evaluate_product(const FormContext& ctx, const Registry& reg,
                               const ProductTerm& term);

}  // namespace covforge

#endif  // COVFORGE_COUNTING_HPP
