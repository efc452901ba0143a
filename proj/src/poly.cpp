#include "covforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace covforge {

std::string scalar_to_string(const Scalar& s) {
  std::ostringstream out;
  out << s;
  return out.str();
}

Scalar scalar_from_string(const std::string& text) {
  Scalar s;
  if (s.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
  s.canonicalize();
  return s;
}

std::string VarId::name() const {
  switch (kind) {
    case VarKind::T: return "t";
    case VarKind::X: return "x" + std::to_string(index);
    case VarKind::Z: return "z" + std::to_string(index);
    case VarKind::Y: return "Y" + std::to_string(index);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::variable(VarId v, int exp) {
  Monomial m;
  if (exp != 0) {
    if (exp < 0 && v.kind != VarKind::T) throw Error("negative exponent on " + v.name());
    m.entries_.emplace_back(v, exp);
  }
  return m;
}

int Monomial::exponent(VarId v) const {
  for (const auto& [var, exp] : entries_)
    if (var == v) return exp;
  return 0;
}

void Monomial::set_exponent_unchecked(VarId v, int exp) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, VarId id) { return e.first < id; });
  if (it != entries_.end() && it->first == v) {
    if (exp == 0)
      entries_.erase(it);
    else
      it->second = exp;
  } else if (exp != 0) {
    entries_.insert(it, Entry{v, exp});
  }
}

void Monomial::validate() const {
  for (const auto& [var, exp] : entries_)
    if (exp < 0 && var.kind != VarKind::T)
      throw Error("negative exponent on " + var.name());
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin(), ae = entries_.end();
  auto b = other.entries_.begin(), be = other.entries_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) out.entries_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  out.validate();
  return out;
}

Monomial Monomial::with_exponent(VarId v, int exp) const {
  if (exp < 0 && v.kind != VarKind::T) throw Error("negative exponent on " + v.name());
  Monomial out = *this;
  out.set_exponent_unchecked(v, exp);
  return out;
}

Monomial Monomial::power(int e) const {
  if (e == 0) return Monomial();
  Monomial out = *this;
  for (auto& [var, exp] : out.entries_) exp *= e;
  out.validate();
  return out;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [var, exp] : entries_) d += exp;
  return d;
}

int Monomial::degree_tx() const {
  int d = 0;
  for (const auto& [var, exp] : entries_)
    if (var.kind == VarKind::T || var.kind == VarKind::X) d += exp;
  return d;
}

long Monomial::weight() const {
  long w = 0;
  for (const auto& [var, exp] : entries_)
    if (var.kind == VarKind::X || var.kind == VarKind::Z) w += long(var.index) * exp;
  return w;
}

bool Monomial::has_kind(VarKind k) const {
  for (const auto& [var, exp] : entries_)
    if (var.kind == k) return true;
  return false;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Walk from the highest variable down; larger exponent wins.
  auto ia = a.entries_.rbegin(), ea = a.entries_.rend();
  auto ib = b.entries_.rbegin(), eb = b.entries_.rend();
  while (ia != ea || ib != eb) {
    if (ia == ea) {
      // b still has a variable a lacks (exponent 0 in a).
      return ib->second > 0 ? -1 : 1;
    }
    if (ib == eb) return ia->second > 0 ? 1 : -1;
    if (ia->first != ib->first) {
      if (ib->first < ia->first) return ia->second > 0 ? 1 : -1;
      return ib->second > 0 ? -1 : 1;
    }
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia;
    ++ib;
  }
  return 0;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [var, exp] : entries_) {
    mix(var.key());
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(exp)));
  }
  return static_cast<std::size_t>(h);
}

std::string Monomial::to_string() const {
  if (entries_.empty()) return "1";
  std::string out;
  bool first = true;
  for (const auto& [var, exp] : entries_) {
    if (!first) out += "*";
    first = false;
    out += var.name();
    if (exp != 1) out += "^" + std::to_string(exp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

Poly Poly::constant(const Scalar& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(Monomial(), c);
  return p;
}

Poly Poly::variable(VarId v, int exp) {
  Poly p;
  p.terms_.emplace(Monomial::variable(v, exp), Scalar(1));
  return p;
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * 2 + b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

Poly Poly::operator-() const {
  Poly out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly out;
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(VarId v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.with_exponent(v, e - 1), c * e);
  }
  return out;
}

Poly Poly::substituted(const std::map<VarId, Poly>& bindings) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(c);
    Monomial untouched;
    for (const auto& [var, exp] : m) {
      auto it = bindings.find(var);
      if (it == bindings.end()) {
        untouched = untouched.times(Monomial::variable(var, exp));
        continue;
      }
      const Poly& q = it->second;
      if (exp >= 0) {
        term = term * q.pow(static_cast<unsigned>(exp));
      } else {
        // Dividing: the binding must be a unit, i.e. a single t-power term.
        if (q.terms_.size() != 1) throw Error("substitution divides by a non-monomial");
        const auto& [qm, qc] = *q.terms_.begin();
        Scalar inv_c = 1 / qc;
        Poly unit;
        unit.add_term(qm.power(exp), Scalar(1));
        Scalar cpow(1);
        for (int k = 0; k < -exp; ++k) cpow *= inv_c;
        term = term * unit.scaled(cpow);
      }
    }
    Poly shifted;
    for (const auto& [tm, tc] : term.terms_) shifted.add_term(tm.times(untouched), tc);
    out += shifted;
  }
  return out;
}

int Poly::total_degree_tx() const {
  int best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int d = m.degree_tx();
    if (first || d > best) best = d;
    first = false;
  }
  return best;
}

long Poly::weight() const {
  long best = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    long w = m.weight();
    if (first || w > best) best = w;
    first = false;
  }
  return best;
}

bool Poly::is_homogeneous_tx() const {
  bool first = true;
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    if (first) {
      deg = m.degree_tx();
      first = false;
    } else if (m.degree_tx() != deg) {
      return false;
    }
  }
  return true;
}

bool Poly::has_kind(VarKind k) const {
  for (const auto& [m, c] : terms_)
    if (m.has_kind(k)) return true;
  return false;
}

bool Poly::has_negative_t() const {
  for (const auto& [m, c] : terms_)
    if (m.has_negative_t()) return true;
  return false;
}

Monomial Poly::leading_monomial() const {
  if (terms_.empty()) throw Error("leading monomial of zero polynomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : terms_)
    if (!best || Monomial::compare(m, *best) > 0) best = &m;
  return *best;
}

Poly Poly::primitive_normalized() const {
  if (terms_.empty()) throw Error("primitive_normalize of zero polynomial");
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Scalar lambda(den_lcm, num_gcd);  // num_gcd > 0 since some coefficient != 0
  lambda.canonicalize();
  if (coefficient(leading_monomial()) * lambda < 0) lambda = -lambda;
  return scaled(lambda);
}

std::vector<std::pair<Monomial, Scalar>> Poly::sorted_terms() const {
  std::vector<std::pair<Monomial, Scalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    Scalar a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    if (m.empty()) {
      out += scalar_to_string(a);
    } else if (a == 1) {
      out += m.to_string();
    } else {
      out += scalar_to_string(a) + "*" + m.to_string();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser: sums of terms; a term is [coefficient] [* var[^exp]]*, with the '*'
// optional. Variables: t, xN, zN, Y1, Y2. Only t accepts negative exponents.
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_space() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_space();
    return i >= s.size();
  }
  char peek() {
    skip_space();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string read_digits() {
    skip_space();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw Error("expected digits at position " + std::to_string(start));
    return s.substr(start, i - start);
  }
  int read_int() {
    skip_space();
    bool neg = eat('-');
    if (!neg) eat('+');
    std::string d = read_digits();
    long v = std::stol(d);
    return static_cast<int>(neg ? -v : v);
  }
};

VarId parse_var(Cursor& cur, int max_index) {
  char c = cur.peek();
  if (c == 't') {
    ++cur.i;
    return var_t();
  }
  if (c == 'Y') {
    ++cur.i;
    std::string d = cur.read_digits();
    if (d != "1" && d != "2") throw Error("unknown variable Y" + d);
    return d == "1" ? var_y1() : var_y2();
  }
  if (c == 'x' || c == 'z') {
    ++cur.i;
    int idx = std::stoi(cur.read_digits());
    int lo = (c == 'x') ? 1 : 2;
    if (idx < lo || idx > max_index)
      throw Error(std::string(1, c) + std::to_string(idx) + " out of range for degree " +
                  std::to_string(max_index));
    return c == 'x' ? var_x(idx) : var_z(idx);
  }
  throw Error("unexpected character '" + std::string(1, c) + "' in polynomial");
}

}  // namespace

Poly Poly::parse(const std::string& text, int max_index) {
  Cursor cur{text};
  Poly out;
  if (cur.done()) throw Error("empty polynomial text");
  bool first_term = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (cur.eat('+'))
      sign = 1;
    else if (!first_term)
      throw Error("expected '+' or '-' between terms");
    first_term = false;

    Scalar coeff(sign);
    bool saw_factor = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      std::string num = cur.read_digits();
      std::string lit = num;
      if (cur.eat('/')) lit += "/" + cur.read_digits();
      coeff *= scalar_from_string(lit);
      saw_factor = true;
    }
    Monomial mono;
    while (true) {
      cur.eat('*');
      char c = cur.peek();
      if (c != 't' && c != 'x' && c != 'z' && c != 'Y') break;
      VarId v = parse_var(cur, max_index);
      int exp = 1;
      if (cur.eat('^')) exp = cur.read_int();
      mono = mono.times(Monomial::variable(v, exp));
      saw_factor = true;
    }
    if (!saw_factor) throw Error("empty term in polynomial");
    out.add_term(mono, coeff);
  }
  return out;
}

}  // namespace covforge
