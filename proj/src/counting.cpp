#include "covforge/counting.hpp"

namespace covforge {

SeriesPoly::SeriesPoly(int bound) : coeff_(static_cast<std::size_t>(bound) + 1, 0) {
  if (bound < 0) throw Error("series bound must be nonnegative");
  coeff_[0] = 1;
}

long long SeriesPoly::coefficient(int n) const {
  if (n < 0 || n > bound()) return 0;
  return coeff_[static_cast<std::size_t>(n)];
}

void SeriesPoly::multiply_one_minus_power(int k) {
  for (int n = bound(); n >= k; --n)
    coeff_[static_cast<std::size_t>(n)] -= coeff_[static_cast<std::size_t>(n - k)];
}

void SeriesPoly::divide_one_minus_power(int k) {
  for (int n = k; n <= bound(); ++n)
    coeff_[static_cast<std::size_t>(n)] += coeff_[static_cast<std::size_t>(n - k)];
}

long long cs_dimension(int d, int i, int j) {
  if (d < 1 || i < 1 || j < 0) return 0;
  long long w2 = static_cast<long long>(d) * i - j;
  if (w2 < 0 || w2 % 2 != 0) return 0;
  const int w = static_cast<int>(w2 / 2);
  SeriesPoly series(w);
  for (int s = 1; s <= i; ++s) series.multiply_one_minus_power(d + s);
  for (int s = 2; s <= i; ++s) series.divide_one_minus_power(s);
  return series.coefficient(w);
}

namespace {

struct ProductScan {
  const Registry& reg;
  int degree_target;
  int order_target;
  std::vector<std::pair<int, int>> stack;
  std::vector<ProductTerm>* out;   // when null, only counts
  long long count = 0;

  // Generators usable as factors: degree >= 1 and < target (every factor of a
  // >=2-factor product has degree <= target-1). Opaque records participate by
  // their (degree, order) bookkeeping.
  void run() {
    descend(0, 0, 0, 0);
  }

  void descend(std::size_t idx, int deg, int ord, int factors) {
    if (deg == degree_target) {
      if (ord == order_target && factors >= 2) {
        ++count;
        if (out) {
          ProductTerm term;
          term.factors = stack;
          out->push_back(std::move(term));
        }
      }
      return;
    }
    if (idx >= reg.records().size()) return;
    const auto& rec = reg.records()[idx];
    if (rec.degree < 1 || rec.degree >= degree_target) {
      descend(idx + 1, deg, ord, factors);
      return;
    }
    const int remaining = degree_target - deg;
    const int max_exp = remaining / rec.degree;
    for (int e = 0; e <= max_exp; ++e) {
      int ndeg = deg + e * rec.degree;
      int nord = ord + e * rec.order;
      if (nord > order_target) break;  // orders only grow with e
      // Remaining order is at most d * remaining degree.
      if (nord + static_cast<long long>(reg.form_degree()) * (degree_target - ndeg) <
          order_target)
        continue;
      if (e > 0) stack.emplace_back(static_cast<int>(idx), e);
      descend(idx + 1, ndeg, nord, factors + e);
      if (e > 0) stack.pop_back();
    }
  }
};

}  // namespace

std::vector<ProductTerm> enumerate_product_terms(const Registry& reg, int i, int j) {
  if (reg.complete_through() < i - 1)
    throw Error("registry incomplete below degree " + std::to_string(i));
  std::vector<ProductTerm> out;
  ProductScan scan{reg, i, j, {}, &out};
  scan.run();
  return out;
}

long long sigma_count(const Registry& reg, int i, int j) {
  if (reg.complete_through() < i - 1)
    throw Error("registry incomplete below degree " + std::to_string(i));
  ProductScan scan{reg, i, j, {}, nullptr};
  scan.run();
  return scan.count;
}

SemiInvariant evaluate_product(const FormContext& ctx, const Registry& reg,
                               const ProductTerm& term) {
  Poly p = Poly::constant(1);
  int degree = 0, order = 0;
  for (const auto& [idx, exp] : term.factors) {
    const GeneratorRecord& rec = reg.records()[static_cast<std::size_t>(idx)];
    if (!rec.value) throw Error("product factor '" + rec.name + "' has no polynomial");
    p = p * rec.value->poly.pow(static_cast<unsigned>(exp));
    degree += rec.degree * exp;
    order += rec.order * exp;
  }
  return SemiInvariant{p, degree, order};
}

std::vector<SemiInvariant> enumerate_products(const FormContext& ctx, const Registry& reg,
                                              int i, int j) {
  std::vector<SemiInvariant> out;
  for (const ProductTerm& term : enumerate_product_terms(reg, i, j))
    out.push_back(evaluate_product(ctx, reg, term));
  return out;
}

}  // namespace covforge
