#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace padyn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Raised when the working precision cannot support a result; callers may retry with more digits.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class CompositionDomain : public Error {
public:
    using Error::Error;
};

class NoPrimeFound : public Error {
public:
    using Error::Error;
};

class BadPrime : public Error {
public:
    using Error::Error;
};

class BadRecurrence : public Error {
public:
    using Error::Error;
};

class NotFixedModP : public Error {
public:
    using Error::Error;
};

class SingularLinearPart : public Error {
public:
    using Error::Error;
};

/// Mahler coefficients failed v(a_m) >= m*c; the preprocessing overestimated c.
class DecayViolation : public Error {
public:
    using Error::Error;
};

/// Exact rational iteration outgrew its bit budget before reaching the requested index.
class HeightBudgetExceeded : public Error {
public:
    HeightBudgetExceeded(std::uint64_t index, const std::string &what)
        : Error(what), index_(index)
    {
    }
    std::uint64_t index() const noexcept { return index_; }

private:
    std::uint64_t index_;
};

class ResonanceObstruction : public Error {
public:
    ResonanceObstruction(std::size_t target, std::vector<std::uint32_t> exponents, const std::string &what)
        : Error(what), target_(target), exponents_(std::move(exponents))
    {
    }
    /// Zero-based index j of the component whose denominator vanished.
    std::size_t target() const noexcept { return target_; }
    const std::vector<std::uint32_t> &exponents() const noexcept { return exponents_; }

private:
    std::size_t target_;
    std::vector<std::uint32_t> exponents_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &what)
        : Error(what), line_(line), column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace padyn
