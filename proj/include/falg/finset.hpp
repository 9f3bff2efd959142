#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "falg/errors.hpp"
#include "falg/limits.hpp"

namespace falg {

/// Finite set of distinct atom labels. Iteration order is declaration order
/// and is part of the value; equality compares labels in order.
class FinSet {
public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elems);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::string& label(std::size_t i) const { return elems_.at(i); }
  const std::vector<std::string>& labels() const { return elems_; }
  std::optional<std::size_t> index_of(std::string_view label) const;
  bool contains(std::string_view label) const {
    return index_of(label).has_value();
  }

  bool operator==(const FinSet& other) const { return elems_ == other.elems_; }
  bool operator!=(const FinSet& other) const { return !(*this == other); }

private:
  std::vector<std::string> elems_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// "(a,b)" — the one pairing convention used everywhere.
std::string pair_label(std::string_view a, std::string_view b);

/// Cartesian product with index law: index(a,b) = index(a)*|B| + index(b).
FinSet product(const FinSet& a, const FinSet& b);

/// The fixed one-element set 1 = {*}.
const FinSet& terminal_set();

/// Total function between finite sets, tabulated on element indices.
class FinFun {
public:
  FinFun() = default;
  FinFun(FinSet dom, FinSet cod, std::vector<uint32_t> table);

  static FinFun identity(const FinSet& a);
  /// Builds from (x, f(x)) label pairs; throws UndefinedOnElement when some
  /// domain element has no pair, UnknownElement on stray labels.
  static FinFun from_pairs(
      const FinSet& dom, const FinSet& cod,
      const std::vector<std::pair<std::string, std::string>>& pairs);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  uint32_t operator()(uint32_t i) const { return table_.at(i); }
  const std::string& image_label(std::string_view x) const;
  const std::vector<uint32_t>& table() const { return table_; }

  bool injective() const;
  bool surjective() const;

  bool operator==(const FinFun& other) const;
  bool operator!=(const FinFun& other) const { return !(*this == other); }

private:
  FinSet dom_, cod_;
  std::vector<uint32_t> table_;
};

/// g after f; requires f.cod == g.dom.
FinFun compose(const FinFun& g, const FinFun& f);

/// All |B|^|A| functions A -> B in lexicographic table order.
std::vector<FinFun> all_functions(const FinSet& a, const FinSet& b,
                                  const Limits& limits = {});

/// x |-> (x, y) : X -> X×Y for a fixed y in Y.
FinFun pair_with(const FinSet& x, const FinSet& y, std::size_t y_index);

/// Projection conventions fixed once: 1×X ≅ X and X×1 ≅ X.
FinFun iso_terminal_left(const FinSet& x);   // 1×X -> X
FinFun iso_terminal_right(const FinSet& x);  // X×1 -> X

/// (X×Y)×Z -> X×(Y×Z); identity on indices, relabeled.
FinFun iso_assoc(const FinSet& x, const FinSet& y, const FinSet& z);

}  // namespace falg
