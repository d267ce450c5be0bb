#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pivotal/operation.hpp"

namespace pivotal
{

/// Non-owning view of a ternary table, used on hot paths (census, membership).
struct TernaryView
{
  const Element* table;
  unsigned m;
  Element zero;
  Element one;

  Element operator()( Element x, Element y, Element z ) const noexcept
  {
    return table[( x * m + y ) * m + z];
  }
};

/// A ternary operation satisfying Π(x,y,y) = y. The constructor enforces it.
class PivotalOperation
{
public:
  /// Throws ArgumentError for non-ternary input, NotPivotalError with the
  /// first lexicographic (x,y) otherwise.
  explicit PivotalOperation( Operation op );

  const Operation& op() const noexcept { return op_; }
  const Domain& domain() const noexcept { return op_.domain(); }

  Element operator()( Element x, Element y, Element z ) const noexcept { return view()( x, y, z ); }

  TernaryView view() const noexcept
  {
    return { op_.table().data(), op_.domain().size(), op_.domain().zero(), op_.domain().one() };
  }

  friend bool operator==( const PivotalOperation&, const PivotalOperation& ) = default;

private:
  Operation op_;
};

PivotalOperation make_pivotal( Operation op );

/// First (x,y) in lexicographic order with Π(x,y,y) != y.
std::optional<std::pair<Element, Element>> pivotal_violation( TernaryView pi ) noexcept;

enum class IdentityId
{
  pri,          ///< Π(x,y,y) = y
  sym01,        ///< Π(x,y,z) = Π(z,x,y)
  sym02,        ///< Π(x,y,z) = Π(z,y,x)
  sym23,        ///< Π(x,y,z) = Π(x,z,y)
  sym12,        ///< Π(x,y,z) = Π(y,x,z)
  ex01,         ///< Π(x,1,0) = x
  ex04,         ///< Π(Π(x,y,z),t,u) = Π(x,Π(y,t,u),Π(z,t,u))
  fine01,       ///< Π(Π(1,0,1),0,1) = Π(1,Π(0,0,1),Π(1,0,1))
  fine02,       ///< Π(Π(0,0,1),0,1) = Π(0,Π(0,0,1),Π(1,0,1))
  symmetry_pair, ///< Π(0,1,0) = Π(0,0,1) and Π(1,1,0) = Π(1,0,1)
  derived       ///< Π(0,1,z) = z, Π(1,1,z) = 1, Π(0,y,0) = 0, Π(1,y,0) = y
};

inline constexpr std::array all_identities = {
    IdentityId::pri,    IdentityId::sym01,  IdentityId::sym02,         IdentityId::sym23,
    IdentityId::sym12,  IdentityId::ex01,   IdentityId::ex04,          IdentityId::fine01,
    IdentityId::fine02, IdentityId::symmetry_pair, IdentityId::derived };

/// CLI name: pri, sym01, sym02, sym23, sym12, ex01, ex04, fine01, fine02, thm28, derived.
std::string_view identity_name( IdentityId id ) noexcept;
std::optional<IdentityId> parse_identity( std::string_view name ) noexcept;

/// Human-readable equations, one per line.
std::string_view identity_text( IdentityId id ) noexcept;

/// Number of quantified variables per equation of the tag.
unsigned identity_variables( IdentityId id ) noexcept;
unsigned identity_equations( IdentityId id ) noexcept;

struct IdentityWitness
{
  unsigned equation = 0; ///< index into the tag's equation list
  Tuple values;          ///< quantified values in the order the equation names them
  Element lhs = 0;
  Element rhs = 0;
};

struct IdentityReport
{
  IdentityId identity = IdentityId::pri;
  bool holds = true;
  std::optional<IdentityWitness> witness;
};

/// Both sides of one equation of `id` at the given quantified values.
std::pair<Element, Element> evaluate_identity( TernaryView pi, IdentityId id, unsigned equation,
                                               std::span<const Element> values );

/// Exhaustive check; the witness is the first failure, equations in order and
/// quantified tuples in lexicographic order.
IdentityReport check_identity( TernaryView pi, IdentityId id );
inline IdentityReport check_identity( const PivotalOperation& pi, IdentityId id )
{
  return check_identity( pi.view(), id );
}

/// Same verdict as check_identity(...).holds without building a report.
bool satisfies( TernaryView pi, IdentityId id ) noexcept;

/// Invariant under all six argument permutations.
bool is_symmetric( TernaryView pi ) noexcept;
inline bool is_symmetric( const PivotalOperation& pi ) noexcept { return is_symmetric( pi.view() ); }

/// {(y,z) : y != z and (y,z) != (1,0)} in lexicographic order.
std::vector<std::pair<Element, Element>> delta_pairs( const Domain& domain );

using DeltaMap = std::map<std::pair<Element, Element>, Element>;

/// Π(x,y,y) = y, Π(x,1,0) = x and Π(x,y,z) = f(y,z) on the delta pairs.
/// Throws FormatError when f misses a delta pair or maps outside the domain.
PivotalOperation from_delta_function( const Domain& domain, const DeltaMap& f );

/// Names accepted by builtin(): med, pi0, pi1, pi2, pi3, example3elem, delta-zero.
std::vector<std::string> builtin_names();

/// Throws FormatError for unknown names.
///
/// example3elem lives on {0, a, 1} encoded as 0↦0, a↦1, 1↦2 (zero = 0, one = 2):
/// Π(x,0,1) = N(x) with N swapping 0 and 1 and fixing a, the sections at
/// (1,a) and (0,a) are constantly 1, those at (a,1) and (a,0) constantly 0.
/// delta-zero is the m = 3 operation built from the constant-0 delta map.
PivotalOperation builtin( std::string_view name );

} // namespace pivotal
