#pragma once

#include <optional>
#include <span>
#include <string>

#include "pivotal/identities.hpp"
#include "pivotal/operation.hpp"

namespace pivotal
{

/// One instance of f(x) = Π(x_i, f(x_i^1), f(x_i^0)) evaluated at (i, x).
struct DecompositionPoint
{
  unsigned position = 0; ///< i, 1-based
  Tuple tuple;           ///< x
  Element value = 0;     ///< f(x)
  Element high = 0;      ///< f(x_i^1)
  Element low = 0;       ///< f(x_i^0)
  Element recombined = 0; ///< Π(x_i, high, low)

  bool holds() const noexcept { return value == recombined; }
};

struct MembershipReport
{
  bool member = true;
  std::optional<DecompositionPoint> witness; ///< present iff !member
};

/// Evaluates the decomposition identity of f at one (position, tuple).
DecompositionPoint decomposition_point( const Operation& f, const PivotalOperation& pi, unsigned position,
                                        std::span<const Element> tuple );

/// Exhaustive check over every position (outer loop, ascending) and tuple
/// (inner loop, lexicographic). The first failure is the witness.
MembershipReport is_pi_decomposable( const Operation& f, const PivotalOperation& pi );

/// Table-level check used by enumeration sweeps; no allocation.
bool is_decomposable( std::span<const Element> table, unsigned arity, TernaryView pi ) noexcept;

MembershipReport is_self_decomposable( const PivotalOperation& pi );
bool is_self_decomposable( TernaryView pi ) noexcept;

enum class TheoremStatus
{
  holds,
  violated,
  vacuous,     ///< premises fail; not counted as support
  inconclusive ///< premises hold but the evidence needed is over budget
};

std::string_view to_string( TheoremStatus status ) noexcept;

struct TheoremCheck
{
  TheoremStatus status = TheoremStatus::vacuous;
  std::string detail;
};

/// Self-decomposable + ex01 + sym01 premises; concludes sym02 and full symmetry.
TheoremCheck check_cyclic_implies_symmetric( const PivotalOperation& pi );

/// Self-decomposable + ex01 premises; concludes symmetric <=> thm28 pair.
TheoremCheck check_symmetry_characterization( const PivotalOperation& pi );

} // namespace pivotal
