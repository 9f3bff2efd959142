#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "falg/finset.hpp"
#include "falg/term.hpp"

namespace falg {

/// A finite set of generators plus finitely many ground relation pairs over
/// the shared term store.
struct GroundPresentation {
  std::shared_ptr<TermStore> store;
  FinSet generators;
  std::vector<std::pair<TermId, TermId>> relations;
};

/// Decides the smallest congruence E on TX containing the presentation's
/// relations: union-find over the hash-consed term DAG with upward
/// congruence propagation through a signature table keyed on canonical
/// child ids. Terms may be interned on demand; doing so never changes
/// verdicts on earlier terms.
///
/// Mutable while building; after freeze() only const queries are allowed.
class CongruenceIndex {
public:
  explicit CongruenceIndex(GroundPresentation p);

  const GroundPresentation& presentation() const { return pres_; }
  TermStore& store() { return *pres_.store; }
  const TermStore& store() const { return *pres_.store; }

  /// Interns a term (and its subterms) into the index, propagating any
  /// congruence merges this discovers. Conservative over earlier verdicts.
  void add(TermId t);
  /// Records t ~ u and closes under the congruence rules.
  void merge(TermId t, TermId u);

  /// (t,u) in E. Interns on demand; exact, no bound needed.
  bool equal(TermId t, TermId u);
  /// Const decision for a frozen index; agrees with equal().
  bool equal_frozen(TermId t, TermId u) const;

  /// Canonical class id (a union-find root). Stable only between merges.
  TermId canonical(TermId t);
  /// Least term of the class under the deterministic term order,
  /// independent of union order.
  TermId representative(TermId t);

  bool tracked(TermId t) const;
  std::size_t merge_count() const { return merge_count_; }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

private:
  void ensure_slot(TermId t);
  TermId find(TermId t);
  TermId find_const(TermId t) const;
  void process_pending();
  uint64_t sig_hash(int32_t op, const std::vector<TermId>& kids) const;
  std::vector<TermId> canonical_kids(TermId t);
  // kNoTerm when the term's class is not represented in the index
  TermId virtual_root(TermId t) const;

  GroundPresentation pres_;
  std::vector<TermId> parent_;     // kNoTerm = untracked
  std::vector<uint32_t> rank_;
  std::vector<TermId> least_;      // per root
  std::unordered_map<TermId, std::vector<TermId>> uses_;  // root -> parent apps
  std::unordered_map<uint64_t, std::vector<TermId>> sig_table_;
  std::vector<std::pair<TermId, TermId>> pending_;
  std::size_t merge_count_ = 0;
  bool frozen_ = false;
};

/// Closure of the smallest congruence containing P.relations, seeded with
/// the relation terms and any extra seed terms.
CongruenceIndex closure_build(GroundPresentation p,
                              const std::vector<TermId>& seed_terms = {});

/// Membership in E; exact (ground closure is decidable).
bool word_equal(CongruenceIndex& idx, TermId t, TermId u);

struct TermClass {
  TermId representative;        // least member in term order
  std::vector<TermId> members;  // in term order
};

/// Partition of all terms of depth <= depth over the presentation's
/// generators, sorted by representative.
std::vector<TermClass> enumerate_classes(CongruenceIndex& idx, unsigned depth);

/// Naive fixpoint of the reflexive/symmetric/transitive/congruence rules on
/// the depth-bounded term universe. Independent oracle for the union-find
/// path; the universe is widened to cover the relation terms so the
/// restriction is exact.
class DenseRelation {
public:
  DenseRelation(std::vector<TermId> universe, std::vector<uint32_t> classes);

  const std::vector<TermId>& universe() const { return universe_; }
  bool in_universe(TermId t) const { return index_.count(t) > 0; }
  bool related(TermId a, TermId b) const;
  uint32_t class_of(TermId t) const;
  std::size_t class_count() const { return class_count_; }

private:
  std::vector<TermId> universe_;
  std::vector<uint32_t> classes_;  // dense class ids, first-occurrence order
  std::unordered_map<TermId, std::size_t> index_;
  std::size_t class_count_ = 0;
};

DenseRelation naive_closure_oracle(const GroundPresentation& p, unsigned depth);

/// Breadth-first subset search (ordered by total pair size, then index) for
/// a finite R0 within candidate_pairs whose closure matches the target
/// congruence on all terms of depth <= depth. Returns std::nullopt when no
/// subset matches within the search budget.
std::optional<std::vector<std::pair<TermId, TermId>>> finite_generation_witness(
    CongruenceIndex& idx_target,
    const std::vector<std::pair<TermId, TermId>>& candidate_pairs,
    unsigned depth, std::size_t subset_budget = 20000);

}  // namespace falg
