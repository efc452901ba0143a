#include "covforge/registry.hpp"

#include "covforge/transvect.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace covforge {

// ---------------------------------------------------------------------------
// Construction expressions
// ---------------------------------------------------------------------------

ConstructionPtr construct_base() {
  auto e = std::make_shared<ConstructionExpr>();
  e->kind = ConstructionExpr::Kind::Base;
  return e;
}

ConstructionPtr construct_ref(std::string name) {
  if (name == "t") return construct_base();
  auto e = std::make_shared<ConstructionExpr>();
  e->kind = ConstructionExpr::Kind::Ref;
  e->name = std::move(name);
  return e;
}

ConstructionPtr construct_transvect(ConstructionPtr left, ConstructionPtr right, int level) {
  auto e = std::make_shared<ConstructionExpr>();
  e->kind = ConstructionExpr::Kind::Transvect;
  e->args = {std::move(left), std::move(right)};
  e->level = level;
  return e;
}

ConstructionPtr construct_product(std::vector<ConstructionPtr> factors) {
  auto e = std::make_shared<ConstructionExpr>();
  e->kind = ConstructionExpr::Kind::Product;
  e->args = std::move(factors);
  return e;
}

ConstructionPtr construct_opaque() {
  auto e = std::make_shared<ConstructionExpr>();
  e->kind = ConstructionExpr::Kind::Opaque;
  return e;
}

std::string ConstructionExpr::to_string() const {
  switch (kind) {
    case Kind::Base:
      return "t";
    case Kind::Ref:
      return name;
    case Kind::Opaque:
      return "opaque";
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += "*";
        out += args[i]->to_string();
      }
      return out;
    }
    case Kind::Transvect:
      return "[" + args[0]->to_string() + "," + args[1]->to_string() + "]^" +
             std::to_string(level);
  }
  return "?";
}

namespace {

struct ExprCursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
};

ConstructionPtr parse_expr(ExprCursor& cur);

ConstructionPtr parse_atom(ExprCursor& cur) {
  if (cur.eat('[')) {
    ConstructionPtr left = parse_expr(cur);
    if (!cur.eat(',')) throw Error("expected ',' in transvectant expression");
    ConstructionPtr right = parse_expr(cur);
    if (!cur.eat(']')) throw Error("expected ']' in transvectant expression");
    if (!cur.eat('^')) throw Error("expected '^' after ']'");
    cur.skip();
    std::size_t start = cur.i;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i])))
      ++cur.i;
    if (cur.i == start) throw Error("expected level after '^'");
    return construct_transvect(left, right, std::stoi(cur.s.substr(start, cur.i - start)));
  }
  cur.skip();
  std::size_t start = cur.i;
  while (cur.i < cur.s.size() &&
         (std::isalnum(static_cast<unsigned char>(cur.s[cur.i])) || cur.s[cur.i] == '_'))
    ++cur.i;
  if (cur.i == start) throw Error("expected name in construction expression");
  std::string name = cur.s.substr(start, cur.i - start);
  if (name == "opaque") return construct_opaque();
  return construct_ref(name);
}

ConstructionPtr parse_expr(ExprCursor& cur) {
  ConstructionPtr out = parse_atom(cur);
  std::vector<ConstructionPtr> factors{out};
  while (cur.eat('*')) factors.push_back(parse_atom(cur));
  if (factors.size() == 1) return out;
  return construct_product(std::move(factors));
}

}  // namespace

ConstructionPtr ConstructionExpr::parse(const std::string& text) {
  ExprCursor cur{text};
  ConstructionPtr e = parse_expr(cur);
  if (cur.peek() != '\0') throw Error("trailing text in construction expression: " + text);
  return e;
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

std::uint64_t record_hash(const GeneratorRecord& rec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_str = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  mix_str(rec.name);
  mix_str(std::to_string(rec.degree) + ":" + std::to_string(rec.order));
  mix_str(rec.value ? rec.value->poly.to_string() : "opaque");
  return h;
}

const GeneratorRecord* Registry::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &records_[it->second];
}

const GeneratorRecord& Registry::at(const std::string& name) const {
  const GeneratorRecord* rec = find(name);
  if (!rec) throw Error("no generator named '" + name + "' in registry");
  return *rec;
}

void Registry::add(GeneratorRecord rec) {
  if (index_.count(rec.name)) throw Error("duplicate generator name '" + rec.name + "'");
  if (rec.audit_hash == 0) rec.audit_hash = record_hash(rec);
  index_[rec.name] = records_.size();
  records_.push_back(std::move(rec));
}

std::map<int, int> Registry::per_degree_counts() const {
  std::map<int, int> out;
  for (const auto& rec : records_) ++out[rec.degree];
  return out;
}

SemiInvariant Registry::evaluate(const FormContext& ctx, const ConstructionExpr& expr) const {
  switch (expr.kind) {
    case ConstructionExpr::Kind::Base:
      return make_semiinvariant(ctx, Poly::variable(var_t()));
    case ConstructionExpr::Kind::Ref: {
      const GeneratorRecord& rec = at(expr.name);
      if (!rec.value) throw Error("generator '" + expr.name + "' has no polynomial payload");
      return *rec.value;
    }
    case ConstructionExpr::Kind::Product: {
      Poly p = Poly::constant(1);
      int degree = 0, order = 0;
      for (const auto& arg : expr.args) {
        SemiInvariant s = evaluate(ctx, *arg);
        if (s.is_zero()) return SemiInvariant{};
        p = p * s.poly;
        degree += s.degree;
        order += s.order;
      }
      return SemiInvariant{p.primitive_normalized(), degree, order};
    }
    case ConstructionExpr::Kind::Transvect: {
      SemiInvariant left = evaluate(ctx, *expr.args[0]);
      SemiInvariant right = evaluate(ctx, *expr.args[1]);
      return semitransvectant_direct(ctx, left, right, expr.level);
    }
    case ConstructionExpr::Kind::Opaque:
      throw Error("cannot evaluate an opaque construction");
  }
  throw Error("corrupt construction expression");
}

// ---------------------------------------------------------------------------
// Registry file format (versioned, line oriented):
//   covforge-registry 1
//   d <degree>
//   complete_through <degree>
//   generator <name> <degree> <order>
//   construct <expr>
//   poly <serialized | none>
//   audit <hex>
// ---------------------------------------------------------------------------

void Registry::write(std::ostream& out) const {
  out << "covforge-registry 1\n";
  out << "d " << d_ << "\n";
  out << "complete_through " << complete_through_ << "\n";
  for (const auto& rec : records_) {
    out << "generator " << rec.name << " " << rec.degree << " " << rec.order << "\n";
    out << "construct " << (rec.construction ? rec.construction->to_string() : "opaque") << "\n";
    out << "poly " << (rec.value ? rec.value->poly.to_string() : "none") << "\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(rec.audit_hash));
    out << "audit " << buf << "\n";
  }
}

void Registry::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write registry file: " + path);
  write(out);
}

namespace {

bool take_prefix(const std::string& line, const char* prefix, std::string& rest) {
  std::size_t n = std::string(prefix).size();
  if (line.rfind(prefix, 0) != 0) return false;
  if (line.size() > n && line[n] != ' ') return false;  // word boundary
  rest = line.size() > n + 1 ? line.substr(n + 1) : "";
  return true;
}

}  // namespace

Registry Registry::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "covforge-registry 1")
    throw Error("registry version mismatch (expected 'covforge-registry 1')");
  Registry reg;
  std::string rest;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (take_prefix(line, "d", rest)) {
      reg.d_ = std::stoi(rest);
    } else if (take_prefix(line, "complete_through", rest)) {
      reg.complete_through_ = std::stoi(rest);
    } else if (take_prefix(line, "generator", rest)) {
      std::istringstream hdr(rest);
      GeneratorRecord rec;
      if (!(hdr >> rec.name >> rec.degree >> rec.order))
        throw Error("malformed generator line: " + line);
      std::string body;
      if (!std::getline(in, body) || !take_prefix(body, "construct", rest))
        throw Error("missing construct line for " + rec.name);
      rec.construction = ConstructionExpr::parse(rest);
      if (!std::getline(in, body) || !take_prefix(body, "poly", rest))
        throw Error("missing poly line for " + rec.name);
      if (rest != "none") {
        Poly p = Poly::parse(rest, reg.d_);
        rec.value = SemiInvariant{p, rec.degree, rec.order};
      }
      if (!std::getline(in, body) || !take_prefix(body, "audit", rest))
        throw Error("missing audit line for " + rec.name);
      rec.audit_hash = std::stoull(rest, nullptr, 16);
      reg.add(std::move(rec));
    } else if (take_prefix(line, "delta", rest)) {
      continue;  // distribution rows live in their own section; skipped here
    } else {
      throw Error("unrecognized registry line: " + line);
    }
  }
  return reg;
}

Registry Registry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open registry file: " + path);
  return read(in);
}

// ---------------------------------------------------------------------------
// DistributionTable
// ---------------------------------------------------------------------------

void DistributionTable::set(int degree, int order, int delta) {
  cells_[{degree, order}] = delta;  // zero cells kept: they record coverage
}

int DistributionTable::get(int degree, int order) const {
  auto it = cells_.find({degree, order});
  return it == cells_.end() ? 0 : it->second;
}

bool DistributionTable::has_degree(int degree) const {
  auto it = cells_.lower_bound({degree, 0});
  return it != cells_.end() && it->first.first == degree;
}

int DistributionTable::degree_total(int degree) const {
  int total = 0;
  for (auto it = cells_.lower_bound({degree, 0});
       it != cells_.end() && it->first.first == degree; ++it)
    total += it->second;
  return total;
}

int DistributionTable::total() const {
  int total = 0;
  for (const auto& [cell, v] : cells_) total += v;
  return total;
}

std::vector<int> DistributionTable::degrees() const {
  std::vector<int> out;
  for (const auto& [cell, v] : cells_)
    if (out.empty() || out.back() != cell.first) out.push_back(cell.first);
  return out;
}

std::string DistributionTable::to_grid() const {
  if (cells_.empty()) return "(empty table)\n";
  int max_deg = 0, max_ord = 0;
  for (const auto& [cell, v] : cells_) {
    max_deg = std::max(max_deg, cell.first);
    if (v != 0) max_ord = std::max(max_ord, cell.second);  // zero cells only record coverage
  }
  std::ostringstream out;
  out << "deg\\ord";
  for (int j = 0; j <= max_ord; ++j) out << std::setw(4) << j;
  out << "\n";
  for (int i = 1; i <= max_deg; ++i) {
    out << std::setw(7) << i;
    for (int j = 0; j <= max_ord; ++j) {
      int v = get(i, j);
      if (v)
        out << std::setw(4) << v;
      else
        out << std::setw(4) << ".";
    }
    out << "\n";
  }
  return out.str();
}

std::string DistributionTable::to_records() const {
  std::ostringstream out;
  for (const auto& [cell, v] : cells_)
    out << "{\"degree\": " << cell.first << ", \"order\": " << cell.second
        << ", \"delta\": " << v << "}\n";
  return out.str();
}

void DistributionTable::write(std::ostream& out) const {
  for (const auto& [cell, v] : cells_)
    out << "delta " << cell.first << " " << cell.second << " " << v << "\n";
}

DistributionTable DistributionTable::read_deltas(std::istream& in) {
  DistributionTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("delta ", 0) != 0) continue;
    std::istringstream row(line.substr(6));
    int i, j, v;
    if (row >> i >> j >> v) table.set(i, j, v);
  }
  return table;
}

}  // namespace covforge
