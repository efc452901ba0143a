#ifndef COVFORGE_REGISTRY_HPP
#define COVFORGE_REGISTRY_HPP

#include "covforge/sl2.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace covforge {

// ---------------------------------------------------------------------------
// Construction expressions: how a generator was built. Leaves are the base
// form t or a reference to an earlier record; nodes are semitransvectants
// [left,right]^r and products. Text form: "t", "dv1", "[t,tr1*dv1]^7".
// ---------------------------------------------------------------------------

struct ConstructionExpr {
  enum class Kind { Base, Ref, Transvect, Product, Opaque };

  Kind kind = Kind::Base;
  std::string name;                                     // Ref
  std::vector<std::shared_ptr<ConstructionExpr>> args;  // Transvect: 2, Product: >=2
  int level = 0;                                        // Transvect

  std::string to_string() const;
  static std::shared_ptr<ConstructionExpr> parse(const std::string& text);
};

using ConstructionPtr = std::shared_ptr<ConstructionExpr>;

ConstructionPtr construct_base();
ConstructionPtr construct_ref(std::string name);
ConstructionPtr construct_transvect(ConstructionPtr left, ConstructionPtr right, int level);
ConstructionPtr construct_product(std::vector<ConstructionPtr> factors);
ConstructionPtr construct_opaque();

// ---------------------------------------------------------------------------
// Generator records and the registry
// ---------------------------------------------------------------------------

struct GeneratorRecord {
  std::string name;
  int degree = 0;
  int order = 0;
  ConstructionPtr construction;
  std::optional<SemiInvariant> value;  // absent only for opaque entries
  std::uint64_t audit_hash = 0;

  bool opaque() const { return !value.has_value(); }
};

std::uint64_t record_hash(const GeneratorRecord& rec);

class Registry {
 public:
  Registry() = default;
  explicit Registry(int degree) : d_(degree) {}

  int form_degree() const { return d_; }
  void set_form_degree(int d) { d_ = d; }

  int complete_through() const { return complete_through_; }
  void set_complete_through(int deg) { complete_through_ = deg; }

  const std::vector<GeneratorRecord>& records() const { return records_; }
  const GeneratorRecord* find(const std::string& name) const;
  const GeneratorRecord& at(const std::string& name) const;
  void add(GeneratorRecord rec);  // throws on duplicate name

  std::size_t size() const { return records_.size(); }
  std::map<int, int> per_degree_counts() const;

  // Evaluates a construction expression against this registry.
  SemiInvariant evaluate(const FormContext& ctx, const ConstructionExpr& expr) const;

  void save(const std::string& path) const;
  void write(std::ostream& out) const;
  static Registry load(const std::string& path);
  static Registry read(std::istream& in);

 private:
  int d_ = 0;
  int complete_through_ = 0;
  std::vector<GeneratorRecord> records_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Distribution table: delta counts by (degree, order)
// ---------------------------------------------------------------------------

class DistributionTable {
 public:
  void set(int degree, int order, int delta);
  int get(int degree, int order) const;  // 0 when absent
  bool has_degree(int degree) const;
  int degree_total(int degree) const;
  int total() const;
  const std::map<std::pair<int, int>, int>& cells() const { return cells_; }
  std::vector<int> degrees() const;

  std::string to_grid() const;     // aligned degree x order grid
  std::string to_records() const;  // one "{degree, order, delta}" JSON object per line

  void write(std::ostream& out) const;  // "delta I J N" lines
  static DistributionTable read_deltas(std::istream& in);

 private:
  std::map<std::pair<int, int>, int> cells_;
};

}  // namespace covforge

#endif  // COVFORGE_REGISTRY_HPP
