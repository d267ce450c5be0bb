#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pivotal/errors.hpp"

namespace pivotal
{

using Element = std::uint8_t;
using Tuple = std::vector<Element>;

/// Finite carrier {0, …, size-1} with two designated elements playing 0 and 1.
///
/// The designated elements are stored as indices so that carriers such as
/// {0, a, 1} can be encoded as 0↦0, a↦1, 1↦2 with zero = 0 and one = 2.
class Domain
{
public:
  /// Throws ArgumentError unless size >= 2, zero != one and both are in range.
  explicit Domain( unsigned size, Element zero = 0, Element one = 1 );

  unsigned size() const noexcept { return size_; }
  Element zero() const noexcept { return zero_; }
  Element one() const noexcept { return one_; }

  bool contains( unsigned e ) const noexcept { return e < size_; }

  /// m^n, throws ArgumentError on overflow of 64 bits.
  std::uint64_t power( unsigned n ) const;

  friend bool operator==( const Domain&, const Domain& ) = default;

private:
  unsigned size_;
  Element zero_;
  Element one_;
};

/// Index of (x_1,…,x_n): sum of x_i·m^(n-i). x_1 is most significant.
std::size_t encode_tuple( const Domain& domain, std::span<const Element> tuple );

/// Inverse of encode_tuple for a fixed arity.
Tuple decode_index( const Domain& domain, unsigned arity, std::size_t index );

/// An n-ary operation A^n -> A stored as a flat value table in encode_tuple order.
class Operation
{
public:
  /// Validates table length (m^n) and entry range; throws FormatError otherwise.
  Operation( Domain domain, unsigned arity, std::vector<Element> table );

  const Domain& domain() const noexcept { return domain_; }
  unsigned arity() const noexcept { return arity_; }
  std::span<const Element> table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }

  Element operator[]( std::size_t index ) const noexcept { return table_[index]; }

  /// Throws ArgumentError when the tuple length differs from the arity.
  Element evaluate( std::span<const Element> tuple ) const;
  Element evaluate( std::initializer_list<Element> tuple ) const
  {
    return evaluate( std::span<const Element>( tuple.begin(), tuple.size() ) );
  }

  bool is_constant() const noexcept;

  friend bool operator==( const Operation&, const Operation& ) = default;
  friend auto operator<=>( const Operation& a, const Operation& b )
  {
    if ( auto c = a.arity_ <=> b.arity_; c != 0 )
    {
      return c;
    }
    return a.table_ <=> b.table_;
  }

private:
  Domain domain_;
  unsigned arity_;
  std::vector<Element> table_;
};

/// p^n_i with 1 <= i <= n.
Operation projection( const Domain& domain, unsigned n, unsigned i );

Operation constant_op( const Domain& domain, unsigned n, Element c );

/// f(g_1,…,g_n)(x) = f(g_1(x),…,g_n(x)). All g_i share domain and arity.
/// A nullary f with no gs yields f itself.
Operation compose( const Operation& f, std::span<const Operation> gs );

/// f_S^a: positions (1-based) in `free_positions` take the new arguments in
/// increasing order, every other position is frozen at the value in `frozen`.
Operation section( const Operation& f, std::span<const unsigned> free_positions,
                   std::span<const Element> frozen );

struct EssentialReport
{
  bool essential = false;
  std::optional<Tuple> witness; ///< b with f_k^b non-constant; entry k is unused (0)
};

/// Whether argument k (1-based) is essential.
EssentialReport is_essential( const Operation& f, unsigned k );

/// Result(y_1..y_m') = f(y_{t(1)}, …, y_{t(n)}) where t = targets (1-based).
/// Targets must cover exactly 1..m'.
Operation identify_args( const Operation& f, std::span<const unsigned> targets );

/// Adds an inessential argument at the end: g(x_1..x_n, x_{n+1}) = f(x_1..x_n).
Operation add_dummy_argument( const Operation& f );

/// Isomorphic copy of f on `target`: result(σx_1..σx_n) = σf(x). `sigma` must
/// be a bijection of the carrier mapping f's zero and one to target's.
Operation relabel( const Operation& f, const Domain& target, std::span<const Element> sigma );

} // namespace pivotal
