#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "falg/finset.hpp"
#include "falg/limits.hpp"

namespace falg {

using OpId = uint32_t;

struct OpDecl {
  std::string symbol;
  unsigned arity;
  bool operator==(const OpDecl&) const = default;
};

/// A finite list of operation symbols with natural-number arities.
/// Finitely many ops, each of finite arity, so every stored signature is
/// super-finitary; validate_signature is the single construction point.
class Signature {
public:
  Signature() = default;

  std::size_t op_count() const { return ops_.size(); }
  const OpDecl& op(OpId i) const { return ops_.at(i); }
  const std::vector<OpDecl>& ops() const { return ops_; }
  std::optional<OpId> index_of(std::string_view symbol) const;
  bool is_super_finitary() const;

  bool operator==(const Signature&) const = default;

private:
  friend Signature validate_signature(
      const std::vector<std::pair<std::string, unsigned>>& ops);
  std::vector<OpDecl> ops_;
};

/// Throws DuplicateSymbol on a repeated operation name.
Signature validate_signature(
    const std::vector<std::pair<std::string, unsigned>>& ops);

/// H_Σ X = ∐_op Σ_op × X^arity(op): the set of flat applications, labeled
/// "g(a,b)". Ops in declared order, argument tuples lexicographic in X order.
FinSet eval_polynomial(const Signature& sig, const FinSet& x,
                       const Limits& limits = {});

/// Functorial action: (op,(x_i)) |-> (op,(f(x_i))).
FinFun eval_polynomial_on_map(const Signature& sig, const FinFun& f,
                              const Limits& limits = {});

/// One stage of the free-monad chain W_0 = Id, W_{n+1} = H_Σ W_n + Id,
/// evaluated at X. Carrier holds printed codes of all terms of depth <= n
/// (bare generators have depth 0); injection includes the previous stage.
struct ChainStage {
  unsigned depth = 0;
  FinSet carrier;
  FinFun injection;  // previous-stage carrier -> this carrier; id at stage 0
};

/// Carrier sizes obey t_{n+1} = Σ_op t_n^arity + |X|.
/// Throws DepthBudgetExceeded when n exceeds the configured max depth or the
/// carrier would exceed the node cap.
ChainStage chain_stage(const Signature& sig, const FinSet& x, unsigned n,
                       const Limits& limits = {});

/// The size recurrence alone (no materialization); empty when some stage
/// overflows the cap.
std::vector<std::size_t> chain_sizes(const Signature& sig, std::size_t gens,
                                     unsigned upto, const Limits& limits = {});

}  // namespace falg
