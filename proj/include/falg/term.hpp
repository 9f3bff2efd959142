#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "falg/finset.hpp"
#include "falg/limits.hpp"
#include "falg/signature.hpp"

namespace falg {

using TermId = uint32_t;
using AtomId = uint32_t;

constexpr TermId kNoTerm = UINT32_MAX;

/// Arena of hash-consed terms over one signature. Leaves are atoms: plain
/// generator labels, pair labels produced by the strength, or wrapped term
/// ids (the substrate for T(TX) values). Interning is idempotent, node ids
/// are stable for the store's lifetime, and id equality coincides with
/// structural equality.
///
/// Single-writer: interning mutates, interned terms are immutable.
class TermStore {
public:
  explicit TermStore(Signature sig, Limits limits = {});

  const Signature& signature() const { return sig_; }
  const Limits& limits() const { return limits_; }
  std::size_t node_count() const { return nodes_.size(); }

  // -- atoms ---------------------------------------------------------------
  AtomId atom(std::string_view label);
  AtomId term_atom(TermId t);  // an atom standing for an interned term
  const std::string& atom_label(AtomId a) const { return atoms_.at(a).label; }
  std::optional<TermId> atom_term(AtomId a) const;
  std::optional<AtomId> find_atom(std::string_view label) const;

  // -- construction --------------------------------------------------------
  TermId var(AtomId a);
  TermId var(std::string_view label) { return var(atom(label)); }
  TermId app(OpId op, std::span<const TermId> args);
  TermId app(std::string_view symbol, std::initializer_list<TermId> args);

  // -- inspection ----------------------------------------------------------
  bool is_var(TermId t) const { return nodes_[t].op < 0; }
  AtomId leaf_atom(TermId t) const;
  OpId op_of(TermId t) const;
  std::span<const TermId> args_of(TermId t) const;
  unsigned depth_of(TermId t) const { return nodes_[t].depth; }
  uint32_t size_of(TermId t) const { return nodes_[t].size; }

  /// Deterministic total order: by size, then depth, then structure
  /// (vars before apps, labels and op symbols lexicographic, children
  /// left to right). Independent of interning order.
  int compare(TermId a, TermId b) const;

  // -- text ----------------------------------------------------------------
  std::string to_text(TermId t) const;
  /// Parses "g(a, f(b))". Leaves must come from `generators` when given,
  /// otherwise any identifier becomes an atom. Errors carry a 1-based column
  /// (line is `line` for diagnostics raised by the caller's context).
  TermId parse(std::string_view text, const FinSet* generators = nullptr,
               unsigned line = 1);

  // -- monad structure -----------------------------------------------------
  /// eta_X: returns Var(x); throws UnknownGenerator when x is not in X.
  TermId unit(const FinSet& x_set, std::string_view x);
  /// Tf: relabels leaves through f; throws UndefinedOnElement on a leaf
  /// outside f's domain.
  TermId map_vars(const FinFun& f, TermId t);
  /// Relabels leaves through an arbitrary atom map.
  TermId rename_leaves(TermId t, const std::function<AtomId(AtomId)>& f);
  /// mu_X: grafts term-atom leaves in place. Every leaf must be a term atom.
  TermId flatten(TermId tt);
  /// Kleisli extension; equals flatten after wrapping sigma images.
  TermId substitute(TermId t, const std::function<TermId(AtomId)>& sigma);
  /// s_{X,Y}(t, y): relabels every leaf x to the pair atom (x,y).
  TermId strength(TermId t, const FinSet& x_set, const FinSet& y_set,
                  std::string_view y);

private:
  struct Node {
    int32_t op;        // -1 for Var
    uint32_t payload;  // atom id for Var, args offset for App
    uint32_t nargs;
    uint32_t depth;
    uint32_t size;
  };
  struct AtomEntry {
    std::string label;
    TermId as_term = kNoTerm;
    TermId var_node = kNoTerm;
  };

  uint64_t node_hash(int32_t op, std::span<const TermId> args,
                     uint32_t var_atom) const;
  bool node_equals(TermId t, int32_t op, std::span<const TermId> args,
                   uint32_t var_atom) const;
  TermId intern(int32_t op, std::span<const TermId> args, uint32_t var_atom);
  void grow_table();

  Signature sig_;
  Limits limits_;
  std::vector<Node> nodes_;
  std::vector<TermId> argpool_;
  std::vector<AtomEntry> atoms_;
  std::unordered_map<std::string, AtomId> atom_index_;
  // open-addressing intern table of TermIds
  std::vector<TermId> table_;
  std::size_t table_used_ = 0;
};

/// All terms over (Σ, X) of depth <= depth, in the chain-stage order:
/// generators first, then op applications over the previous stage with
/// lexicographic argument tuples. Throws DepthBudgetExceeded past the cap.
std::vector<TermId> enumerate_terms(TermStore& store, const FinSet& x,
                                    unsigned depth);

}  // namespace falg
