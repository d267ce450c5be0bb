#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "pivotal/budget.hpp"
#include "pivotal/identities.hpp"
#include "pivotal/operation.hpp"

namespace pivotal
{

/// Expression built from constants by nesting Π(x_k, high, low).
///
/// A node pivoting on x_k has children of level < k; a leaf has level 0.
/// Children are shared and immutable, so copies are cheap.
class NormalForm
{
public:
  static NormalForm leaf( Element constant );
  /// Throws ArgumentError unless both children have level < variable.
  static NormalForm node( unsigned variable, NormalForm high, NormalForm low );

  bool is_leaf() const noexcept { return children_ == nullptr; }
  Element constant() const;
  unsigned variable() const;
  unsigned level() const noexcept { return variable_; }
  const NormalForm& high() const;
  const NormalForm& low() const;

  std::size_t node_count() const noexcept;
  std::size_t leaf_count() const noexcept;

  /// `(xk HIGH LOW)` for nodes and the element index for leaves.
  std::string to_string() const;

  friend bool operator==( const NormalForm& a, const NormalForm& b ) noexcept;

private:
  NormalForm() = default;

  struct Children;
  Element constant_ = 0;
  unsigned variable_ = 0;
  std::shared_ptr<const Children> children_;
};

/// Inverse of NormalForm::to_string; throws FormatError.
NormalForm parse_normal_form( std::string_view text );

/// Full expansion: the root pivots on x_n, then x_{n-1}, down to x_1, and the
/// 2^n leaves are the values of f on {0,1}^n (0 and 1 the designated elements).
NormalForm build_normal_form( const Operation& f );

/// Evaluates the expression under Π as an operation of the given arity
/// (at least expr.level()).
Operation nf_to_operation( const NormalForm& expr, const PivotalOperation& pi, unsigned arity );
inline Operation nf_to_operation( const NormalForm& expr, const PivotalOperation& pi )
{
  return nf_to_operation( expr, pi, expr.level() );
}

/// Collapses, bottom-up, every node whose children are structurally equal.
NormalForm simplify( const NormalForm& expr );

/// Whether some assignment of constants to the leaves of the full level-n
/// shape evaluates to f under Π. Brute force over m^(2^n) assignments;
/// throws BudgetExceeded beyond budget.max_candidates.
bool nf_membership_oracle( const Operation& f, const PivotalOperation& pi, const Budget& budget = {} );

} // namespace pivotal
