#include "falg/finset.hpp"

#include <algorithm>
#include <stdexcept>

namespace falg {

FinSet::FinSet(std::vector<std::string> elems) : elems_(std::move(elems)) {
  index_.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    auto [it, fresh] = index_.emplace(elems_[i], i);
    (void)it;
    if (!fresh) {
      throw std::invalid_argument("duplicate label in finite set: " +
                                  elems_[i]);
    }
  }
}

std::optional<std::size_t> FinSet::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string pair_label(std::string_view a, std::string_view b) {
  std::string s;
  s.reserve(a.size() + b.size() + 3);
  s.push_back('(');
  s.append(a);
  s.push_back(',');
  s.append(b);
  s.push_back(')');
  return s;
}

FinSet product(const FinSet& a, const FinSet& b) {
  std::vector<std::string> elems;
  elems.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      elems.push_back(pair_label(a.label(i), b.label(j)));
  return FinSet(std::move(elems));
}

const FinSet& terminal_set() {
  static const FinSet one(std::vector<std::string>{"*"});
  return one;
}

FinFun::FinFun(FinSet dom, FinSet cod, std::vector<uint32_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size())
    throw std::invalid_argument("function table size does not match domain");
  for (uint32_t v : table_)
    if (v >= cod_.size())
      throw std::invalid_argument("function table value out of codomain");
}

FinFun FinFun::identity(const FinSet& a) {
  std::vector<uint32_t> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = static_cast<uint32_t>(i);
  return FinFun(a, a, std::move(t));
}

FinFun FinFun::from_pairs(
    const FinSet& dom, const FinSet& cod,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::optional<uint32_t>> partial(dom.size());
  for (const auto& [x, y] : pairs) {
    auto xi = dom.index_of(x);
    if (!xi) throw UnknownElement(x);
    auto yi = cod.index_of(y);
    if (!yi) throw UnknownElement(y);
    partial[*xi] = static_cast<uint32_t>(*yi);
  }
  std::vector<uint32_t> table(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!partial[i]) throw UndefinedOnElement(dom.label(i));
    table[i] = *partial[i];
  }
  return FinFun(dom, cod, std::move(table));
}

const std::string& FinFun::image_label(std::string_view x) const {
  auto xi = dom_.index_of(x);
  if (!xi) throw UnknownElement(std::string(x));
  return cod_.label(table_[*xi]);
}

bool FinFun::injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (uint32_t v : table_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool FinFun::surjective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (uint32_t v : table_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool FinFun::operator==(const FinFun& other) const {
  return dom_ == other.dom_ && cod_ == other.cod_ && table_ == other.table_;
}

FinFun compose(const FinFun& g, const FinFun& f) {
  if (f.cod() != g.dom())
    throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<uint32_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = g(f(static_cast<uint32_t>(i)));
  return FinFun(f.dom(), g.cod(), std::move(table));
}

std::vector<FinFun> all_functions(const FinSet& a, const FinSet& b,
                                  const Limits& limits) {
  if (a.empty()) return {FinFun(a, b, {})};
  if (b.empty()) return {};  // no functions from nonempty into empty
  double count = 1;
  for (std::size_t i = 0; i < a.size(); ++i) count *= double(b.size());
  if (count > double(limits.node_cap))
    throw SizeCapExceeded("function space |B|^|A| too large");
  std::vector<FinFun> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<uint32_t> table(a.size(), 0);
  while (true) {
    out.emplace_back(a, b, table);
    std::size_t i = a.size();
    while (i > 0) {
      --i;
      if (++table[i] < b.size()) break;
      table[i] = 0;
      if (i == 0) return out;
    }
  }
}

FinFun pair_with(const FinSet& x, const FinSet& y, std::size_t y_index) {
  if (y_index >= y.size()) throw UnknownElement("pair_with: index out of range");
  FinSet xy = product(x, y);
  std::vector<uint32_t> table(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    table[i] = static_cast<uint32_t>(i * y.size() + y_index);
  return FinFun(x, xy, std::move(table));
}

FinFun iso_terminal_left(const FinSet& x) {
  FinSet dom = product(terminal_set(), x);
  std::vector<uint32_t> table(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) table[i] = static_cast<uint32_t>(i);
  return FinFun(std::move(dom), x, std::move(table));
}

FinFun iso_terminal_right(const FinSet& x) {
  FinSet dom = product(x, terminal_set());
  std::vector<uint32_t> table(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) table[i] = static_cast<uint32_t>(i);
  return FinFun(std::move(dom), x, std::move(table));
}

FinFun iso_assoc(const FinSet& x, const FinSet& y, const FinSet& z) {
  // (i*|Y|+j)*|Z|+k == i*(|Y||Z|) + (j*|Z|+k): the table is the identity.
  FinSet dom = product(product(x, y), z);
  FinSet cod = product(x, product(y, z));
  std::vector<uint32_t> table(dom.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = static_cast<uint32_t>(i);
  return FinFun(std::move(dom), std::move(cod), std::move(table));
}

}  // namespace falg
