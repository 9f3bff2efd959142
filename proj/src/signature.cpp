#include "falg/signature.hpp"

#include <cmath>
#include <limits>

#include "falg/errors.hpp"

namespace falg {

std::optional<OpId> Signature::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].symbol == symbol) return static_cast<OpId>(i);
  return std::nullopt;
}

bool Signature::is_super_finitary() const {
  // Over Set this is structural: a finite op list with finite arities.
  return true;
}

Signature validate_signature(
    const std::vector<std::pair<std::string, unsigned>>& ops) {
  Signature sig;
  sig.ops_.reserve(ops.size());
  for (const auto& [symbol, arity] : ops) {
    if (sig.index_of(symbol)) throw DuplicateSymbol(symbol);
    sig.ops_.push_back(OpDecl{symbol, arity});
  }
  return sig;
}

namespace {

// |X|^arity with saturation at cap+1.
std::size_t pow_capped(std::size_t base, unsigned exp, std::size_t cap) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::string apply_label(const std::string& symbol,
                        const std::vector<std::string>& args) {
  if (args.empty()) return symbol;
  std::string s = symbol;
  s.push_back('(');
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s.append(", ");
    s.append(args[i]);
  }
  s.push_back(')');
  return s;
}

// Emits f(t...) for every op and every argument tuple over `prev`,
// in declared-op then lexicographic-tuple order.
void emit_applications(const Signature& sig,
                       const std::vector<std::string>& prev,
                       std::vector<std::string>& out) {
  for (const OpDecl& op : sig.ops()) {
    if (op.arity == 0) {
      out.push_back(op.symbol);
      continue;
    }
    if (prev.empty()) continue;
    std::vector<std::size_t> idx(op.arity, 0);
    std::vector<std::string> args(op.arity);
    while (true) {
      for (unsigned k = 0; k < op.arity; ++k) args[k] = prev[idx[k]];
      out.push_back(apply_label(op.symbol, args));
      unsigned k = op.arity;
      bool done = false;
      while (k > 0) {
        --k;
        if (++idx[k] < prev.size()) break;
        idx[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
}

}  // namespace

FinSet eval_polynomial(const Signature& sig, const FinSet& x,
                       const Limits& limits) {
  std::size_t total = 0;
  for (const OpDecl& op : sig.ops()) {
    std::size_t part = pow_capped(x.size(), op.arity, limits.node_cap);
    total += part;
    if (total > limits.node_cap)
      throw SizeCapExceeded("polynomial functor carrier");
  }
  std::vector<std::string> elems;
  elems.reserve(total);
  emit_applications(sig, x.labels(), elems);
  return FinSet(std::move(elems));
}

FinFun eval_polynomial_on_map(const Signature& sig, const FinFun& f,
                              const Limits& limits) {
  FinSet hx = eval_polynomial(sig, f.dom(), limits);
  FinSet hy = eval_polynomial(sig, f.cod(), limits);
  // Walk the domain tuples in the construction order and map argwise.
  std::vector<uint32_t> table;
  table.reserve(hx.size());
  const std::size_t nx = f.dom().size();
  // Offsets of each op's block inside H_Σ Y.
  std::vector<std::size_t> offset_y(sig.op_count() + 1, 0);
  for (std::size_t o = 0; o < sig.op_count(); ++o)
    offset_y[o + 1] =
        offset_y[o] + pow_capped(f.cod().size(), sig.op(o).arity, limits.node_cap);
  for (std::size_t o = 0; o < sig.op_count(); ++o) {
    const unsigned arity = sig.op(static_cast<OpId>(o)).arity;
    std::size_t block = pow_capped(nx, arity, limits.node_cap);
    if (arity == 0) {
      table.push_back(static_cast<uint32_t>(offset_y[o]));
      continue;
    }
    if (nx == 0) continue;
    for (std::size_t t = 0; t < block; ++t) {
      // Decode mixed-radix tuple over X, map through f, re-encode over Y.
      std::size_t rest = t;
      std::size_t code = 0;
      std::vector<uint32_t> xs(arity);
      for (unsigned k = arity; k > 0; --k) {
        xs[k - 1] = static_cast<uint32_t>(rest % nx);
        rest /= nx;
      }
      for (unsigned k = 0; k < arity; ++k)
        code = code * f.cod().size() + f(xs[k]);
      table.push_back(static_cast<uint32_t>(offset_y[o] + code));
    }
  }
  return FinFun(std::move(hx), std::move(hy), std::move(table));
}

std::vector<std::size_t> chain_sizes(const Signature& sig, std::size_t gens,
                                     unsigned upto, const Limits& limits) {
  std::vector<std::size_t> sizes;
  std::size_t t = gens;
  sizes.push_back(t);
  for (unsigned n = 0; n < upto; ++n) {
    std::size_t next = gens;
    for (const OpDecl& op : sig.ops()) {
      std::size_t part = pow_capped(t, op.arity, limits.node_cap);
      next += part;
      if (next > limits.node_cap) return {};
    }
    t = next;
    sizes.push_back(t);
  }
  return sizes;
}

ChainStage chain_stage(const Signature& sig, const FinSet& x, unsigned n,
                       const Limits& limits) {
  if (n > limits.max_chain_depth)
    throw DepthBudgetExceeded("chain stage " + std::to_string(n) +
                              " beyond max depth " +
                              std::to_string(limits.max_chain_depth));
  auto sizes = chain_sizes(sig, x.size(), n, limits);
  if (sizes.empty())
    throw DepthBudgetExceeded("chain stage carrier beyond node cap");

  std::vector<std::string> stage = x.labels();
  std::vector<std::string> prev_stage;
  for (unsigned d = 0; d < n; ++d) {
    prev_stage = stage;
    std::vector<std::string> next = x.labels();
    emit_applications(sig, prev_stage, next);
    stage = std::move(next);
  }

  FinSet carrier(stage);
  FinFun injection = FinFun::identity(carrier);
  if (n > 0) {
    FinSet prev(prev_stage);
    std::vector<uint32_t> table(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      auto j = carrier.index_of(prev.label(i));
      if (!j)
        throw Error("chain stage inclusion broken for " + prev.label(i));
      table[i] = static_cast<uint32_t>(*j);
    }
    injection = FinFun(std::move(prev), carrier, std::move(table));
  }
  return ChainStage{n, std::move(carrier), std::move(injection)};
}

}  // namespace falg
