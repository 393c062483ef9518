#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

/// Base for everything the engine can refuse to compute. The CLI maps
/// these to exit code 2; input problems (ParseError, unknown names) map
/// to exit code 1.
class EngineError : public std::runtime_error {
public:
  EngineError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct NotFrobenius : EngineError {
  explicit NotFrobenius(const std::string& reason)
      : EngineError("NotFrobenius", reason) {}
};

struct NotAutomorphism : EngineError {
  explicit NotAutomorphism(const std::string& witness)
      : EngineError("NotAutomorphism", witness) {}
};

struct NotHomomorphism : EngineError {
  explicit NotHomomorphism(const std::string& witness)
      : EngineError("NotHomomorphism", witness) {}
};

struct ZeroP : EngineError {
  ZeroP() : EngineError("ZeroP", "sigma requires p != 0") {}
};

struct NotInvertible : EngineError {
  explicit NotInvertible(const std::string& what)
      : EngineError("NotInvertible", what) {}
};

struct NotCommuting : EngineError {
  explicit NotCommuting(const std::string& pair)
      : EngineError("NotCommuting", pair) {}
};

struct CrossCheckMismatch : EngineError {
  explicit CrossCheckMismatch(const std::string& diagnostic)
      : EngineError("CrossCheckMismatch", diagnostic) {}
};

struct InconsistentDual : EngineError {
  explicit InconsistentDual(const std::string& what)
      : EngineError("InconsistentDual", what) {}
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& expected)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": expected " + expected),
        line_(line), col_(col), expected_(expected) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

private:
  int line_, col_;
  std::string expected_;
};

}  // namespace koszul
