#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pivotal
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad table file, unknown name, out-of-range element.
class FormatError : public Error
{
public:
  using Error::Error;
};

/// Arity, domain or position mismatch between arguments.
class ArgumentError : public Error
{
public:
  using Error::Error;
};

/// A ternary table that violates Π(x,y,y) = y.
class NotPivotalError : public Error
{
public:
  NotPivotalError( std::uint8_t x, std::uint8_t y, std::uint8_t value );

  std::uint8_t x;
  std::uint8_t y;
  std::uint8_t value; ///< the offending Π(x,y,y)
};

/// A computation would exceed its configured budget. No partial result is returned.
class BudgetExceeded : public Error
{
public:
  BudgetExceeded( std::string what_limit, std::uint64_t limit, std::uint64_t requested );

  std::string limit_name;
  std::uint64_t limit;
  std::uint64_t requested;
};

} // namespace pivotal
