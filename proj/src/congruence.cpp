#include "falg/congruence.hpp"

#include <algorithm>
#include <map>

#include "falg/errors.hpp"

namespace falg {

CongruenceIndex::CongruenceIndex(GroundPresentation p) : pres_(std::move(p)) {}

void CongruenceIndex::ensure_slot(TermId t) {
  if (parent_.size() <= t) {
    parent_.resize(t + 1, kNoTerm);
    rank_.resize(t + 1, 0);
    least_.resize(t + 1, kNoTerm);
  }
}

bool CongruenceIndex::tracked(TermId t) const {
  return t < parent_.size() && parent_[t] != kNoTerm;
}

TermId CongruenceIndex::find(TermId t) {
  TermId root = t;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[t] != root) {
    TermId next = parent_[t];
    parent_[t] = root;
    t = next;
  }
  return root;
}

TermId CongruenceIndex::find_const(TermId t) const {
  while (parent_[t] != t) t = parent_[t];
  return t;
}

uint64_t CongruenceIndex::sig_hash(int32_t op,
                                   const std::vector<TermId>& kids) const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(op + 1);
  for (TermId k : kids) {
    h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xc2b2ae3d27d4eb4full;
  }
  return h;
}

std::vector<TermId> CongruenceIndex::canonical_kids(TermId t) {
  auto args = store().args_of(t);
  std::vector<TermId> kids(args.begin(), args.end());
  for (TermId& k : kids) k = find(k);
  return kids;
}

void CongruenceIndex::add(TermId t) {
  if (frozen_) throw Error("congruence index is frozen");
  if (tracked(t)) return;
  const TermStore& s = store();
  if (!s.is_var(t)) {
    for (TermId a : s.args_of(t)) add(a);
  }
  ensure_slot(t);
  parent_[t] = t;
  rank_[t] = 0;
  least_[t] = t;
  if (s.is_var(t)) return;

  std::vector<TermId> kids = canonical_kids(t);
  uint64_t h = sig_hash(static_cast<int32_t>(s.op_of(t)), kids);
  auto& bucket = sig_table_[h];
  for (TermId q : bucket) {
    if (store().op_of(q) != s.op_of(t)) continue;
    std::vector<TermId> qkids = canonical_kids(q);
    if (qkids == kids) {
      // Congruent to an existing node: the fresh singleton joins its class.
      // q keeps representing this signature, so t needn't enter use lists.
      TermId rq = find(q);
      parent_[t] = rq;
      if (store().compare(t, least_[rq]) < 0) least_[rq] = t;
      return;
    }
  }
  bucket.push_back(t);
  for (TermId k : kids) uses_[k].push_back(t);
  process_pending();
}

void CongruenceIndex::merge(TermId t, TermId u) {
  if (frozen_) throw Error("congruence index is frozen");
  add(t);
  add(u);
  pending_.emplace_back(t, u);
  process_pending();
}

void CongruenceIndex::process_pending() {
  while (!pending_.empty()) {
    auto [a, b] = pending_.back();
    pending_.pop_back();
    TermId ra = find(a);
    TermId rb = find(b);
    if (ra == rb) continue;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    // rb is absorbed into ra
    parent_[rb] = ra;
    ++merge_count_;
    if (store().compare(least_[rb], least_[ra]) < 0) least_[ra] = least_[rb];

    auto it = uses_.find(rb);
    if (it == uses_.end()) continue;
    std::vector<TermId> moved = std::move(it->second);
    uses_.erase(it);
    for (TermId p : moved) {
      std::vector<TermId> kids = canonical_kids(p);
      uint64_t h = sig_hash(static_cast<int32_t>(store().op_of(p)), kids);
      auto& bucket = sig_table_[h];
      bool collided = false;
      for (TermId q : bucket) {
        if (q == p) continue;
        if (store().op_of(q) != store().op_of(p)) continue;
        if (canonical_kids(q) == kids) {
          pending_.emplace_back(p, q);
          collided = true;
          break;
        }
      }
      if (!collided && std::find(bucket.begin(), bucket.end(), p) == bucket.end())
        bucket.push_back(p);
    }
    auto& target = uses_[ra];
    target.insert(target.end(), moved.begin(), moved.end());
  }
}

bool CongruenceIndex::equal(TermId t, TermId u) {
  if (frozen_) return equal_frozen(t, u);
  add(t);
  add(u);
  return find(t) == find(u);
}

TermId CongruenceIndex::virtual_root(TermId t) const {
  if (tracked(t)) return find_const(t);
  const TermStore& s = store();
  if (s.is_var(t)) return kNoTerm;
  std::vector<TermId> kids;
  kids.reserve(s.args_of(t).size());
  for (TermId a : s.args_of(t)) {
    TermId r = virtual_root(a);
    if (r == kNoTerm) return kNoTerm;
    kids.push_back(r);
  }
  uint64_t h = sig_hash(static_cast<int32_t>(s.op_of(t)), kids);
  auto it = sig_table_.find(h);
  if (it == sig_table_.end()) return kNoTerm;
  for (TermId q : it->second) {
    if (s.op_of(q) != s.op_of(t)) continue;
    auto qargs = s.args_of(q);
    if (qargs.size() != kids.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (find_const(qargs[i]) != kids[i]) {
        match = false;
        break;
      }
    }
    if (match) return find_const(q);
  }
  return kNoTerm;
}

bool CongruenceIndex::equal_frozen(TermId t, TermId u) const {
  if (t == u) return true;
  TermId rt = virtual_root(t);
  TermId ru = virtual_root(u);
  if (rt != kNoTerm || ru != kNoTerm) return rt == ru && rt != kNoTerm;
  // Both classes are untouched by the congruence: equality is structural
  // modulo canonical children.
  const TermStore& s = store();
  if (s.is_var(t) || s.is_var(u)) return false;  // distinct ids, fresh vars
  if (s.op_of(t) != s.op_of(u)) return false;
  auto at = s.args_of(t);
  auto au = s.args_of(u);
  for (std::size_t i = 0; i < at.size(); ++i)
    if (!equal_frozen(at[i], au[i])) return false;
  return true;
}

TermId CongruenceIndex::canonical(TermId t) {
  add(t);
  return find(t);
}

TermId CongruenceIndex::representative(TermId t) {
  add(t);
  return least_[find(t)];
}

CongruenceIndex closure_build(GroundPresentation p,
                              const std::vector<TermId>& seed_terms) {
  CongruenceIndex idx(std::move(p));
  for (TermId t : seed_terms) idx.add(t);
  for (const auto& [l, r] : idx.presentation().relations) idx.merge(l, r);
  return idx;
}

bool word_equal(CongruenceIndex& idx, TermId t, TermId u) {
  return idx.equal(t, u);
}

std::vector<TermClass> enumerate_classes(CongruenceIndex& idx, unsigned depth) {
  auto universe =
      enumerate_terms(idx.store(), idx.presentation().generators, depth);
  std::unordered_map<TermId, std::size_t> root_to_class;
  std::vector<TermClass> classes;
  for (TermId t : universe) {
    TermId r = idx.canonical(t);
    auto [it, fresh] = root_to_class.emplace(r, classes.size());
    if (fresh) classes.push_back(TermClass{t, {}});
    classes[it->second].members.push_back(t);
  }
  const TermStore& s = idx.store();
  for (TermClass& c : classes) {
    std::sort(c.members.begin(), c.members.end(),
              [&](TermId a, TermId b) { return s.compare(a, b) < 0; });
    c.representative = c.members.front();
  }
  std::sort(classes.begin(), classes.end(), [&](const TermClass& a,
                                                const TermClass& b) {
    return s.compare(a.representative, b.representative) < 0;
  });
  return classes;
}

DenseRelation::DenseRelation(std::vector<TermId> universe,
                             std::vector<uint32_t> classes)
    : universe_(std::move(universe)), classes_(std::move(classes)) {
  index_.reserve(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i)
    index_.emplace(universe_[i], i);
  uint32_t max_class = 0;
  for (uint32_t c : classes_) max_class = std::max(max_class, c + 1);
  class_count_ = max_class;
}

bool DenseRelation::related(TermId a, TermId b) const {
  return class_of(a) == class_of(b);
}

uint32_t DenseRelation::class_of(TermId t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw Error("term outside oracle universe");
  return classes_[it->second];
}

namespace {

// Plain parent-array find without compression; the oracle stays simple.
uint32_t naive_find(const std::vector<uint32_t>& parent, uint32_t i) {
  while (parent[i] != i) i = parent[i];
  return i;
}

}  // namespace

DenseRelation naive_closure_oracle(const GroundPresentation& p,
                                   unsigned depth) {
  TermStore& s = *p.store;
  unsigned full_depth = depth;
  for (const auto& [l, r] : p.relations) {
    full_depth = std::max(full_depth, s.depth_of(l));
    full_depth = std::max(full_depth, s.depth_of(r));
  }
  std::vector<TermId> wide = enumerate_terms(s, p.generators, full_depth);
  std::unordered_map<TermId, uint32_t> pos;
  pos.reserve(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i)
    pos.emplace(wide[i], static_cast<uint32_t>(i));

  std::vector<uint32_t> parent(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i)
    parent[i] = static_cast<uint32_t>(i);
  auto unite = [&](uint32_t a, uint32_t b) -> bool {
    a = naive_find(parent, a);
    b = naive_find(parent, b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };

  for (const auto& [l, r] : p.relations) unite(pos.at(l), pos.at(r));

  // Iterate the congruence rule to fixpoint: key applications by
  // (op, argument classes) exactly and merge everything under one key.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<uint32_t>, uint32_t> first_with_key;
    std::vector<uint32_t> key;
    for (std::size_t i = 0; i < wide.size(); ++i) {
      TermId t = wide[i];
      if (s.is_var(t)) continue;
      key.clear();
      key.push_back(s.op_of(t));
      for (TermId a : s.args_of(t))
        key.push_back(naive_find(parent, pos.at(a)));
      auto [it, fresh] = first_with_key.emplace(key, static_cast<uint32_t>(i));
      if (!fresh && unite(it->second, static_cast<uint32_t>(i)))
        changed = true;
    }
  }

  // Restrict to the requested depth, renumbering classes densely in
  // first-occurrence order.
  std::vector<TermId> universe;
  std::vector<uint32_t> classes;
  std::unordered_map<uint32_t, uint32_t> dense;
  for (std::size_t i = 0; i < wide.size(); ++i) {
    if (s.depth_of(wide[i]) > depth) continue;
    uint32_t root = naive_find(parent, static_cast<uint32_t>(i));
    auto [it, fresh] =
        dense.emplace(root, static_cast<uint32_t>(dense.size()));
    universe.push_back(wide[i]);
    classes.push_back(it->second);
  }
  return DenseRelation(std::move(universe), std::move(classes));
}

namespace {

// Dense class labeling of `universe` under idx, in first-occurrence order.
std::vector<uint32_t> partition_labels(CongruenceIndex& idx,
                                       const std::vector<TermId>& universe) {
  std::unordered_map<TermId, uint32_t> dense;
  std::vector<uint32_t> out;
  out.reserve(universe.size());
  for (TermId t : universe) {
    TermId r = idx.canonical(t);
    auto [it, fresh] = dense.emplace(r, static_cast<uint32_t>(dense.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

std::optional<std::vector<std::pair<TermId, TermId>>> finite_generation_witness(
    CongruenceIndex& idx_target,
    const std::vector<std::pair<TermId, TermId>>& candidate_pairs,
    unsigned depth, std::size_t subset_budget) {
  TermStore& s = idx_target.store();
  const FinSet& gens = idx_target.presentation().generators;
  std::vector<TermId> universe = enumerate_terms(s, gens, depth);
  std::vector<uint32_t> target = partition_labels(idx_target, universe);

  // Keep only nontrivial pairs that actually lie in the target congruence,
  // normalized and deduplicated.
  std::vector<std::pair<TermId, TermId>> cands;
  for (auto [l, r] : candidate_pairs) {
    if (l == r) continue;
    if (!idx_target.equal(l, r)) continue;
    if (s.compare(r, l) < 0) std::swap(l, r);
    cands.emplace_back(l, r);
  }
  std::sort(cands.begin(), cands.end(),
            [&](const auto& a, const auto& b) {
              std::size_t sa = s.size_of(a.first) + s.size_of(a.second);
              std::size_t sb = s.size_of(b.first) + s.size_of(b.second);
              if (sa != sb) return sa < sb;
              int c = s.compare(a.first, b.first);
              if (c != 0) return c < 0;
              return s.compare(a.second, b.second) < 0;
            });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  auto subset_matches =
      [&](const std::vector<std::size_t>& pick) -> bool {
    GroundPresentation sub{idx_target.presentation().store, gens, {}};
    for (std::size_t i : pick) sub.relations.push_back(cands[i]);
    CongruenceIndex idx = closure_build(sub);
    return partition_labels(idx, universe) == target;
  };

  // Monotonicity: if even the full candidate set falls short, no subset works.
  std::vector<std::size_t> all(cands.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!subset_matches(all)) return std::nullopt;

  std::size_t tried = 0;
  std::vector<std::size_t> pick;
  // Subsets by increasing size, lexicographic within a size.
  for (std::size_t k = 0; k <= cands.size(); ++k) {
    pick.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      if (++tried > subset_budget) return std::nullopt;
      if (subset_matches(pick)) {
        std::vector<std::pair<TermId, TermId>> out;
        for (std::size_t i : pick) out.push_back(cands[i]);
        return out;
      }
      // next k-combination
      if (k == 0) break;
      std::size_t i = k;
      bool done = false;
      while (true) {
        if (i == 0) {
          done = true;
          break;
        }
        --i;
        if (pick[i] != i + cands.size() - k) break;
      }
      if (done) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace falg
