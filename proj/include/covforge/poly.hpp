#ifndef COVFORGE_POLY_HPP
#define COVFORGE_POLY_HPP

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace covforge {

// Exact rational scalar. All coefficient arithmetic in the engine is exact;
// mpq_class keeps values in lowest terms with positive denominator.
using Scalar = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string scalar_to_string(const Scalar& s);
Scalar scalar_from_string(const std::string& text);

// ---------------------------------------------------------------------------
// Variables
//
// The coefficient algebra lives in C[t, x1..xd][1/t]; reduced coordinates add
// z2..zd and covariants add Y1, Y2. The canonical variable order is
// t < x1 < ... < xd < z2 < ... < zd < Y1 < Y2, which the kind-major key below
// realizes directly.
// ---------------------------------------------------------------------------

enum class VarKind : std::uint8_t { T = 0, X = 1, Z = 2, Y = 3 };

struct VarId {
  VarKind kind{VarKind::T};
  std::uint8_t index{0};  // X: 1..d, Z: 2..d, Y: 1..2, T: 0

  constexpr std::uint16_t key() const {
    return static_cast<std::uint16_t>((static_cast<std::uint16_t>(kind) << 8) | index);
  }
  friend constexpr bool operator==(VarId a, VarId b) { return a.key() == b.key(); }
  friend constexpr bool operator!=(VarId a, VarId b) { return !(a == b); }
  friend constexpr bool operator<(VarId a, VarId b) { return a.key() < b.key(); }

  std::string name() const;
};

constexpr VarId var_t() { return VarId{VarKind::T, 0}; }
constexpr VarId var_x(int i) { return VarId{VarKind::X, static_cast<std::uint8_t>(i)}; }
constexpr VarId var_z(int i) { return VarId{VarKind::Z, static_cast<std::uint8_t>(i)}; }
constexpr VarId var_y1() { return VarId{VarKind::Y, 1}; }
constexpr VarId var_y2() { return VarId{VarKind::Y, 2}; }

// ---------------------------------------------------------------------------
// Monomial: sorted (variable, exponent) pairs, zero exponents never stored.
// Only t may carry a negative exponent (the algebra is Laurent in t alone).
// ---------------------------------------------------------------------------

class Monomial {
 public:
  using Entry = std::pair<VarId, std::int32_t>;

  Monomial() = default;
  static Monomial variable(VarId v, int exp = 1);

  int exponent(VarId v) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Entry* begin() const { return entries_.data(); }
  const Entry* end() const { return entries_.data() + entries_.size(); }

  // Exponent-wise sum; throws if a non-t variable would go negative.
  Monomial times(const Monomial& other) const;
  Monomial with_exponent(VarId v, int exp) const;  // replaces (erases when 0)
  Monomial power(int e) const;                     // componentwise scale

  int total_degree() const;     // all variables, t counted with sign
  int degree_tx() const;        // t and x variables only
  long weight() const;          // sum index*exp over x and z variables
  bool has_kind(VarKind k) const;
  bool has_negative_t() const { return exponent(var_t()) < 0; }

  // Canonical order: graded, then exponents compared from the highest
  // variable down (larger exponent first). Returns <0, 0, >0.
  static int compare(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const;
  std::string to_string() const;  // "t^2*x1*x3^4", "1" for the empty monomial

 private:
  void set_exponent_unchecked(VarId v, int exp);
  void validate() const;

  boost::container::small_vector<Entry, 8> entries_;  // sorted by VarId
  friend class Poly;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(a, b) < 0;
  }
};

// ---------------------------------------------------------------------------
// Poly: sparse polynomial over Scalar, Laurent in t. Canonical: no stored
// zero coefficients, so equal polynomials have identical term maps.
// ---------------------------------------------------------------------------

class Poly {
 public:
  using TermMap = std::unordered_map<Monomial, Scalar, MonomialHash>;

  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(const Scalar& c);
  static Poly variable(VarId v, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Scalar& c) const;
  Poly pow(unsigned e) const;

  // Formal partial derivative (Laurent power rule on t).
  Poly derivative(VarId v) const;

  // Simultaneous substitution. A variable with negative exponent may only be
  // bound to a single-term t-power (the units of the ring).
  Poly substituted(const std::map<VarId, Poly>& bindings) const;

  int total_degree_tx() const;  // max over terms of degree_tx; 0 for zero poly
  long weight() const;          // max over terms (bihomogeneous inputs: the weight)
  bool is_homogeneous_tx() const;
  bool has_kind(VarKind k) const;
  bool has_negative_t() const;

  Monomial leading_monomial() const;  // greatest in canonical order; throws on zero

  // lambda * p with lambda > 0 rational such that coefficients become coprime
  // integers and the leading coefficient is positive. Throws on zero input.
  Poly primitive_normalized() const;

  // Terms sorted descending in the canonical order.
  std::vector<std::pair<Monomial, Scalar>> sorted_terms() const;

  std::string to_string() const;
  // Round-trip parser for the serializer output and CLI input; max_index
  // bounds x/z indices (the ambient degree d).
  static Poly parse(const std::string& text, int max_index);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  TermMap terms_;
};

}  // namespace covforge

#endif  // COVFORGE_POLY_HPP
