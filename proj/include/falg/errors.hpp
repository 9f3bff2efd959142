#pragma once

#include <stdexcept>
#include <string>

namespace falg {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateSymbol : public Error {
public:
  explicit DuplicateSymbol(const std::string& sym)
      : Error("duplicate operation symbol: " + sym), symbol(sym) {}
  std::string symbol;
};

class UnknownSymbol : public Error {
public:
  explicit UnknownSymbol(const std::string& sym)
      : Error("unknown symbol: " + sym), symbol(sym) {}
  std::string symbol;
};

class UnknownGenerator : public Error {
public:
  explicit UnknownGenerator(const std::string& name)
      : Error("unknown generator: " + name), name(name) {}
  std::string name;
};

class UnknownElement : public Error {
public:
  explicit UnknownElement(const std::string& name)
      : Error("unknown element: " + name), name(name) {}
  std::string name;
};

class UndefinedOnElement : public Error {
public:
  explicit UndefinedOnElement(const std::string& name)
      : Error("map undefined on element: " + name), name(name) {}
  std::string name;
};

class ArityMismatch : public Error {
public:
  ArityMismatch(const std::string& sym, unsigned expected, unsigned got)
      : Error("arity mismatch for " + sym + ": expected " +
              std::to_string(expected) + ", got " + std::to_string(got)),
        symbol(sym), expected(expected), got(got) {}
  std::string symbol;
  unsigned expected;
  unsigned got;
};

class DepthBudgetExceeded : public Error {
public:
  explicit DepthBudgetExceeded(const std::string& what)
      : Error("depth budget exceeded: " + what) {}
};

class SizeCapExceeded : public Error {
public:
  explicit SizeCapExceeded(const std::string& what)
      : Error("size cap exceeded: " + what) {}
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what)
      : Error("budget exceeded: " + what) {}
};

class NotGenerating : public Error {
public:
  explicit NotGenerating(const std::string& what)
      : Error("subset does not generate the algebra: " + what) {}
};

class NotHomomorphism : public Error {
public:
  explicit NotHomomorphism(const std::string& what)
      : Error("not a homomorphism: " + what) {}
};

class NotAMonoid : public Error {
public:
  explicit NotAMonoid(const std::string& what)
      : Error("monoid laws violated: " + what) {}
};

class CarrierNotMaterializable : public Error {
public:
  explicit CarrierNotMaterializable(const std::string& what)
      : Error("carrier not materializable: " + what) {}
};

class MonoFlagViolation : public Error {
public:
  explicit MonoFlagViolation(unsigned stage)
      : Error("chain link at stage " + std::to_string(stage) +
              " is not injective"),
        stage(stage) {}
  unsigned stage;
};

/// Parse diagnostic carrying a 1-based position.
class SyntaxError : public Error {
public:
  SyntaxError(unsigned line, unsigned col, const std::string& expected)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + expected),
        line(line), col(col), expected(expected) {}
  unsigned line;
  unsigned col;
  std::string expected;
};

}  // namespace falg
