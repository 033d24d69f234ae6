#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fea {

// Coarse failure classes; the CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorCategory { input, numerical, resource };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(ErrorCategory::input, what) {}
};

struct InvalidAutomaton : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotDeterministic : InvalidInput {
  explicit NotDeterministic(const std::string& what = "input must be deterministic")
      : InvalidInput(what) {}
};

struct NotStronglyConnected : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct UnknownSymbol : InvalidInput {
  explicit UnknownSymbol(const std::string& symbol)
      : InvalidInput("unknown symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

private:
  std::string symbol_;
};

struct NotConverged : Error {
  NotConverged(std::size_t iterations, double residual)
      : Error(ErrorCategory::numerical,
              "spectral solver did not converge after " + std::to_string(iterations) +
                  " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  std::size_t iterations;
  double residual;
};

struct Overflow : Error {
  explicit Overflow(std::size_t n)
      : Error(ErrorCategory::numerical,
              "partition sum at n=" + std::to_string(n) + " exceeds the floating range"),
        n(n) {}
  std::size_t n;
};

struct StateCapExceeded : Error {
  explicit StateCapExceeded(std::size_t cap)
      : Error(ErrorCategory::resource,
              "determinization exceeded the state cap of " + std::to_string(cap)),
        cap(cap) {}
  std::size_t cap;
};

struct BlockAlphabetTooLarge : Error {
  BlockAlphabetTooLarge(std::size_t count, std::size_t cap)
      : Error(ErrorCategory::resource,
              "block alphabet needs " + std::to_string(count) + " tuple symbols (cap " +
                  std::to_string(cap) + ")"),
        count(count),
        cap(cap) {}
  std::size_t count;
  std::size_t cap;
};

struct EnumerationBudgetExceeded : Error {
  explicit EnumerationBudgetExceeded(std::size_t budget)
      : Error(ErrorCategory::resource,
              "word enumeration exceeded the budget of " + std::to_string(budget) + " words"),
        budget(budget) {}
  std::size_t budget;
};

}  // namespace fea
