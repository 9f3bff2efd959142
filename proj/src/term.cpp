#include "falg/term.hpp"

#include <algorithm>
#include <cctype>

#include "falg/errors.hpp"

namespace falg {

TermStore::TermStore(Signature sig, Limits limits)
    : sig_(std::move(sig)), limits_(limits), table_(64, kNoTerm) {}

AtomId TermStore::atom(std::string_view label) {
  auto it = atom_index_.find(std::string(label));
  if (it != atom_index_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atoms_.size());
  atoms_.push_back(AtomEntry{std::string(label), kNoTerm, kNoTerm});
  atom_index_.emplace(atoms_.back().label, id);
  return id;
}

AtomId TermStore::term_atom(TermId t) {
  AtomId id = atom("#" + std::to_string(t));
  atoms_[id].as_term = t;
  return id;
}

std::optional<TermId> TermStore::atom_term(AtomId a) const {
  if (atoms_.at(a).as_term == kNoTerm) return std::nullopt;
  return atoms_[a].as_term;
}

std::optional<AtomId> TermStore::find_atom(std::string_view label) const {
  auto it = atom_index_.find(std::string(label));
  if (it == atom_index_.end()) return std::nullopt;
  return it->second;
}

uint64_t TermStore::node_hash(int32_t op, std::span<const TermId> args,
                              uint32_t var_atom) const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(op + 1);
  if (op < 0) {
    h ^= 0xff51afd7ed558ccdull * (var_atom + 1);
  } else {
    for (TermId a : args) {
      h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xc2b2ae3d27d4eb4full;
    }
  }
  return h;
}

bool TermStore::node_equals(TermId t, int32_t op, std::span<const TermId> args,
                            uint32_t var_atom) const {
  const Node& n = nodes_[t];
  if (n.op != op) return false;
  if (op < 0) return n.payload == var_atom;
  if (n.nargs != args.size()) return false;
  for (uint32_t i = 0; i < n.nargs; ++i)
    if (argpool_[n.payload + i] != args[i]) return false;
  return true;
}

void TermStore::grow_table() {
  std::vector<TermId> old = std::move(table_);
  table_.assign(old.size() * 2, kNoTerm);
  table_used_ = 0;
  const std::size_t mask = table_.size() - 1;
  for (TermId t : old) {
    if (t == kNoTerm) continue;
    const Node& n = nodes_[t];
    std::span<const TermId> args(argpool_.data() + n.payload, n.nargs);
    uint64_t h = node_hash(n.op, n.op < 0 ? std::span<const TermId>() : args,
                           n.op < 0 ? n.payload : 0);
    std::size_t i = h & mask;
    while (table_[i] != kNoTerm) i = (i + 1) & mask;
    table_[i] = t;
    ++table_used_;
  }
}

TermId TermStore::intern(int32_t op, std::span<const TermId> args,
                         uint32_t var_atom) {
  const std::size_t mask = table_.size() - 1;
  uint64_t h = node_hash(op, args, var_atom);
  std::size_t i = h & mask;
  while (table_[i] != kNoTerm) {
    if (node_equals(table_[i], op, args, var_atom)) return table_[i];
    i = (i + 1) & mask;
  }
  if (nodes_.size() >= limits_.node_cap)
    throw SizeCapExceeded("term arena at " + std::to_string(nodes_.size()) +
                          " nodes");
  Node node{};
  node.op = op;
  if (op < 0) {
    node.payload = var_atom;
    node.nargs = 0;
    node.depth = 0;
    node.size = 1;
  } else {
    node.payload = static_cast<uint32_t>(argpool_.size());
    node.nargs = static_cast<uint32_t>(args.size());
    uint32_t depth = 0;
    uint32_t size = 1;
    for (TermId a : args) {
      depth = std::max(depth, nodes_[a].depth + 1);
      size += nodes_[a].size;
      argpool_.push_back(a);
    }
    if (args.empty()) depth = 1;  // constants sit in W_1, not W_0
    node.depth = depth;
    node.size = size;
  }
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(node);
  table_[i] = id;
  ++table_used_;
  if (table_used_ * 10 >= table_.size() * 7) grow_table();
  return id;
}

TermId TermStore::var(AtomId a) {
  if (atoms_.at(a).var_node != kNoTerm) return atoms_[a].var_node;
  TermId t = intern(-1, {}, a);
  atoms_[a].var_node = t;
  return t;
}

TermId TermStore::app(OpId op, std::span<const TermId> args) {
  const OpDecl& decl = sig_.op(op);
  if (decl.arity != args.size())
    throw ArityMismatch(decl.symbol, decl.arity,
                        static_cast<unsigned>(args.size()));
  for (TermId a : args)
    if (a >= nodes_.size()) throw Error("argument term not in this store");
  return intern(static_cast<int32_t>(op), args, 0);
}

TermId TermStore::app(std::string_view symbol,
                      std::initializer_list<TermId> args) {
  auto op = sig_.index_of(symbol);
  if (!op) throw UnknownSymbol(std::string(symbol));
  std::vector<TermId> v(args);
  return app(*op, v);
}

AtomId TermStore::leaf_atom(TermId t) const {
  if (!is_var(t)) throw Error("leaf_atom on an application node");
  return nodes_[t].payload;
}

OpId TermStore::op_of(TermId t) const {
  if (is_var(t)) throw Error("op_of on a variable node");
  return static_cast<OpId>(nodes_[t].op);
}

std::span<const TermId> TermStore::args_of(TermId t) const {
  const Node& n = nodes_[t];
  if (n.op < 0) return {};
  return std::span<const TermId>(argpool_.data() + n.payload, n.nargs);
}

int TermStore::compare(TermId a, TermId b) const {
  if (a == b) return 0;
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  if (na.size != nb.size) return na.size < nb.size ? -1 : 1;
  if (na.depth != nb.depth) return na.depth < nb.depth ? -1 : 1;
  bool va = na.op < 0, vb = nb.op < 0;
  if (va != vb) return va ? -1 : 1;
  if (va) {
    const std::string& la = atoms_[na.payload].label;
    const std::string& lb = atoms_[nb.payload].label;
    return la.compare(lb) < 0 ? -1 : 1;
  }
  if (na.op != nb.op) {
    int c = sig_.op(static_cast<OpId>(na.op))
                .symbol.compare(sig_.op(static_cast<OpId>(nb.op)).symbol);
    if (c != 0) return c < 0 ? -1 : 1;
    return na.op < nb.op ? -1 : 1;
  }
  for (uint32_t i = 0; i < na.nargs; ++i) {
    int c = compare(argpool_[na.payload + i], argpool_[nb.payload + i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string TermStore::to_text(TermId t) const {
  const Node& n = nodes_[t];
  if (n.op < 0) return atoms_[n.payload].label;
  std::string s = sig_.op(static_cast<OpId>(n.op)).symbol;
  if (n.nargs == 0) return s;
  s.push_back('(');
  for (uint32_t i = 0; i < n.nargs; ++i) {
    if (i) s.append(", ");
    s.append(to_text(argpool_[n.payload + i]));
  }
  s.push_back(')');
  return s;
}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct TermParser {
  TermStore& store;
  std::string_view text;
  const FinSet* generators;
  unsigned line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  unsigned col() const { return static_cast<unsigned>(pos) + 1; }

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(line, col(), expected);
  }

  std::string_view ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) fail("identifier");
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  TermId term() {
    std::string_view name = ident();
    auto op = store.signature().index_of(name);
    skip_ws();
    bool has_parens = pos < text.size() && text[pos] == '(';
    if (op) {
      const OpDecl& decl = store.signature().op(*op);
      std::vector<TermId> args;
      if (has_parens) {
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
        } else {
          while (true) {
            args.push_back(term());
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
              ++pos;
              continue;
            }
            if (pos < text.size() && text[pos] == ')') {
              ++pos;
              break;
            }
            fail("',' or ')'");
          }
        }
      }
      if (args.size() != decl.arity)
        throw ArityMismatch(decl.symbol, decl.arity,
                            static_cast<unsigned>(args.size()));
      return store.app(*op, args);
    }
    if (has_parens) throw UnknownSymbol(std::string(name));
    if (generators && !generators->contains(name))
      throw UnknownSymbol(std::string(name));
    return store.var(name);
  }

  TermId run() {
    TermId t = term();
    skip_ws();
    if (pos != text.size()) fail("end of term");
    return t;
  }
};

}  // namespace

TermId TermStore::parse(std::string_view text, const FinSet* generators,
                        unsigned line) {
  TermParser p{*this, text, generators, line};
  return p.run();
}

TermId TermStore::unit(const FinSet& x_set, std::string_view x) {
  if (!x_set.contains(x)) throw UnknownGenerator(std::string(x));
  return var(x);
}

TermId TermStore::rename_leaves(TermId t,
                                const std::function<AtomId(AtomId)>& f) {
  std::unordered_map<TermId, TermId> memo;
  std::function<TermId(TermId)> go = [&](TermId u) -> TermId {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    TermId out;
    if (is_var(u)) {
      out = var(f(leaf_atom(u)));
    } else {
      auto as = args_of(u);
      std::vector<TermId> mapped(as.begin(), as.end());
      for (TermId& a : mapped) a = go(a);
      out = app(op_of(u), mapped);
    }
    memo.emplace(u, out);
    return out;
  };
  return go(t);
}

TermId TermStore::map_vars(const FinFun& f, TermId t) {
  return rename_leaves(t, [&](AtomId a) -> AtomId {
    auto idx = f.dom().index_of(atom_label(a));
    if (!idx) throw UndefinedOnElement(atom_label(a));
    return atom(f.cod().label(f(static_cast<uint32_t>(*idx))));
  });
}

TermId TermStore::flatten(TermId tt) {
  std::unordered_map<TermId, TermId> memo;
  std::function<TermId(TermId)> go = [&](TermId u) -> TermId {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    TermId out;
    if (is_var(u)) {
      auto inner = atom_term(leaf_atom(u));
      if (!inner)
        throw Error("flatten: leaf '" + atom_label(leaf_atom(u)) +
                    "' is not a wrapped term");
      out = *inner;
    } else {
      auto as = args_of(u);
      std::vector<TermId> mapped(as.begin(), as.end());
      for (TermId& a : mapped) a = go(a);
      out = app(op_of(u), mapped);
    }
    memo.emplace(u, out);
    return out;
  };
  return go(tt);
}

TermId TermStore::substitute(TermId t,
                             const std::function<TermId(AtomId)>& sigma) {
  std::unordered_map<TermId, TermId> memo;
  std::function<TermId(TermId)> go = [&](TermId u) -> TermId {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    TermId out;
    if (is_var(u)) {
      out = sigma(leaf_atom(u));
    } else {
      auto as = args_of(u);
      std::vector<TermId> mapped(as.begin(), as.end());
      for (TermId& a : mapped) a = go(a);
      out = app(op_of(u), mapped);
    }
    memo.emplace(u, out);
    return out;
  };
  return go(t);
}

TermId TermStore::strength(TermId t, const FinSet& x_set, const FinSet& y_set,
                           std::string_view y) {
  if (!y_set.contains(y)) throw UnknownElement(std::string(y));
  std::string ys(y);
  return rename_leaves(t, [&](AtomId a) -> AtomId {
    const std::string& label = atom_label(a);
    if (!x_set.contains(label)) throw UnknownElement(label);
    return atom(pair_label(label, ys));
  });
}

std::vector<TermId> enumerate_terms(TermStore& store, const FinSet& x,
                                    unsigned depth) {
  auto sizes =
      chain_sizes(store.signature(), x.size(), depth, store.limits());
  if (sizes.empty())
    throw DepthBudgetExceeded("term enumeration beyond node cap");

  std::vector<TermId> stage;
  stage.reserve(sizes.front());
  for (const std::string& g : x.labels()) stage.push_back(store.var(g));
  const Signature& sig = store.signature();
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<TermId> next;
    next.reserve(sizes[d + 1]);
    for (const std::string& g : x.labels()) next.push_back(store.var(g));
    for (OpId o = 0; o < sig.op_count(); ++o) {
      const unsigned arity = sig.op(o).arity;
      if (arity == 0) {
        next.push_back(store.app(o, {}));
        continue;
      }
      if (stage.empty()) continue;
      std::vector<std::size_t> idx(arity, 0);
      std::vector<TermId> args(arity);
      while (true) {
        for (unsigned k = 0; k < arity; ++k) args[k] = stage[idx[k]];
        next.push_back(store.app(o, args));
        unsigned k = arity;
        bool done = false;
        while (k > 0) {
          --k;
          if (++idx[k] < stage.size()) break;
          idx[k] = 0;
          if (k == 0) done = true;
        }
        if (done) break;
      }
    }
    stage = std::move(next);
  }
  return stage;
}

}  // namespace falg
