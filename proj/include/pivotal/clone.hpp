#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pivotal/budget.hpp"
#include "pivotal/decomposition.hpp"
#include "pivotal/identities.hpp"
#include "pivotal/operation.hpp"

namespace pivotal
{

enum class Provenance
{
  generated,  ///< term closure of generators (plus constants)
  enumerated, ///< all tables passing Π-decomposability
  provided    ///< assembled by hand, no predicate
};

std::string_view to_string( Provenance p ) noexcept;

struct BudgetUsage
{
  std::uint64_t candidates = 0;
  std::uint64_t compositions = 0;
  std::uint64_t rounds = 0;

  BudgetUsage& operator+=( const BudgetUsage& o ) noexcept
  {
    candidates += o.candidates;
    compositions += o.compositions;
    rounds += o.rounds;
    return *this;
  }
};

/// Operations of arities 1..arity_cap on one domain, deduplicated per arity.
class Fragment
{
public:
  Fragment( Domain domain, unsigned arity_cap, Provenance provenance );

  const Domain& domain() const noexcept { return domain_; }
  unsigned arity_cap() const noexcept { return arity_cap_; }
  Provenance provenance() const noexcept { return provenance_; }

  /// Sorted by table.
  const std::set<Operation>& members( unsigned arity ) const;
  std::size_t size( unsigned arity ) const { return members( arity ).size(); }
  bool contains( const Operation& op ) const;

  /// False when already present. Throws ArgumentError on domain mismatch or
  /// arity outside [1, arity_cap].
  bool insert( Operation op );

  /// Whether every table of the given arity is present.
  bool is_full( unsigned arity ) const;

  BudgetUsage budget_used;

private:
  Domain domain_;
  unsigned arity_cap_;
  Provenance provenance_;
  std::vector<std::set<Operation>> members_; // index = arity - 1
};

struct GeneratedSet
{
  std::vector<Operation> members; ///< sorted by table
  BudgetUsage usage;
};

/// Least set of `arity`-ary operations containing the projections (and the
/// constants if requested) closed under every generator. Nullary generators
/// contribute their constant. Worklist fixpoint: each round only evaluates
/// generator applications that use at least one member added in the
/// previous round.
GeneratedSet generate_fragment( const Domain& domain, std::span<const Operation> generators, unsigned arity,
                                bool include_constants, const Budget& budget = {} );

/// generate_fragment for every arity 1..arity_cap.
Fragment generate_fragment_up_to( const Domain& domain, std::span<const Operation> generators, unsigned arity_cap,
                                  bool include_constants, const Budget& budget = {} );

/// All Π-decomposable operations of the given arity. Enumerates m^(m^n)
/// tables; throws BudgetExceeded beyond budget.max_candidates.
GeneratedSet lambda_fragment( const PivotalOperation& pi, unsigned arity, const Budget& budget = {} );
Fragment lambda_fragment_up_to( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget = {} );

enum class CheckMode
{
  automatic, ///< exhaustive within budget.max_compositions, sampled beyond
  exhaustive,
  sampled
};

struct CompositionCounterexample
{
  Operation outer;
  std::vector<Operation> inner;
  Operation result;
};

struct CompositionReport
{
  bool closed = true;
  bool sampled = false;
  std::uint64_t checked = 0;         ///< compositions evaluated
  std::uint64_t skipped_full = 0;    ///< compositions into a full arity, true without evaluation
  std::uint64_t seed = 0;            ///< meaningful when sampled
  std::optional<CompositionCounterexample> counterexample;
};

/// Closure of a fragment under f(g_1..g_k) with f of arity k and all g_i of
/// one arity, every arity within the cap. Exhaustive checking raises
/// BudgetExceeded in CheckMode::exhaustive when over budget.
CompositionReport is_closed_under_composition( const Fragment& fragment, const Budget& budget = {},
                                               CheckMode mode = CheckMode::automatic );

/// First projection p^n_i (n ascending, i ascending) missing from the fragment.
std::optional<Operation> missing_projection( const Fragment& fragment );

enum class BoundedVerdict
{
  bounded_verified, ///< projections present and exhaustive closure check passed
  sampled,          ///< projections present and sampled closure check passed
  refuted,          ///< missing projection or a composition escapes
  unverified        ///< over budget
};

std::string_view to_string( BoundedVerdict v ) noexcept;

/// Clone evidence: true for verified/sampled, false for refuted, empty for unverified.
std::optional<bool> clone_evidence( BoundedVerdict v ) noexcept;

struct BoundedCloneCheck
{
  BoundedVerdict verdict = BoundedVerdict::unverified;
  std::vector<std::size_t> lambda_sizes; ///< arities 1..cap, empty when unverified
  std::optional<Operation> missing_projection;
  std::optional<CompositionReport> closure;
  std::string note; ///< budget message when unverified
};

/// Computes Λ_Π up to the cap and checks projections and closure.
BoundedCloneCheck bounded_clone_check( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget = {} );

struct CloneCertificate
{
  unsigned arity_cap = 0;
  IdentityReport ex01;
  IdentityReport ex04;
  IdentityReport fine01;
  IdentityReport fine02;
  MembershipReport self_decomposable;
  bool symmetric = false;

  /// ex01 and ex04: Λ_Π is a clone containing the constants.
  bool certified = false;
  /// Unary projection in Λ_Π; equals ex01.
  bool unary_projection_member = false;

  BoundedCloneCheck bounded;

  /// ex04 premise: clone <=> ex01.
  TheoremStatus ex01_criterion = TheoremStatus::vacuous;
  /// self-decomposable, fine01, fine02 premises: clone <=> ex01 and ex04.
  TheoremStatus characterization = TheoremStatus::vacuous;
  /// self-decomposable premise: (clone and fine01 and fine02) <=> (ex01 and ex04).
  TheoremStatus fine_characterization = TheoremStatus::vacuous;
  /// symmetric, self-decomposable, ex01 premises: clone <=> ex04.
  TheoremStatus symmetric_characterization = TheoremStatus::vacuous;

  /// "certified", else the bounded verdict.
  std::string_view verdict() const noexcept;
};

CloneCertificate clone_certificate( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget = {} );

struct ArityComparison
{
  unsigned arity = 0;
  std::size_t generated_size = 0;
  std::size_t lambda_size = 0;
  bool equal = false;
  bool generated_subset = false; ///< generated ⊆ Λ
};

struct GeneratedEqualityReport
{
  /// holds/violated when Λ_Π is (bounded-)a clone containing Π; vacuous otherwise.
  TheoremStatus status = TheoremStatus::vacuous;
  std::string detail;
  std::vector<ArityComparison> arities; ///< arities computed within budget
};

/// Compares the clone generated by Π and the constants with Λ_Π per arity.
GeneratedEqualityReport check_generated_equals_lambda( const PivotalOperation& pi, unsigned arity_cap,
                                                       const Budget& budget = {} );

struct DerivedEquationsReport
{
  IdentityReport equations;
  bool ex01 = false;
  bool self_decomposable = false;
  TheoremStatus under_ex01 = TheoremStatus::vacuous;
  TheoremStatus under_ex01_and_decomposition = TheoremStatus::vacuous;
};

/// Evaluates Π(0,1,z) = z, Π(1,1,z) = 1, Π(0,y,0) = 0, Π(1,y,0) = y and
/// grades them under both readings of the hypothesis.
DerivedEquationsReport check_derived_equations( const PivotalOperation& pi );

struct PreservationReport
{
  TheoremStatus status = TheoremStatus::vacuous; ///< vacuous without ex04
  CompositionReport compositions;
};

/// For Π with ex04: every composition of Λ_Π members up to the cap is
/// Π-decomposable, tested by the decomposition predicate itself rather than
/// by fragment lookup.
PreservationReport check_composition_preservation( const PivotalOperation& pi, unsigned arity_cap,
                                                   const Budget& budget = {}, CheckMode mode = CheckMode::automatic );

/// Writes one table file per member and manifest.json into `directory`.
void export_fragment( const Fragment& fragment, const std::filesystem::path& directory, std::string_view verdict );

} // namespace pivotal
