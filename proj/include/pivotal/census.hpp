#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pivotal/budget.hpp"
#include "pivotal/clone.hpp"
#include "pivotal/identities.hpp"

namespace pivotal
{

/// Enumerates the pivotal tables of a domain in lexicographic order.
///
/// Entries Π(x,y,y) are fixed to y, and with ex01 required Π(x,1,0) is fixed
/// to x. The remaining "free" entries, in table order, are the digits of the
/// candidate id, the first free entry being the most significant.
class PivotalSpace
{
public:
  /// Throws ArgumentError for domains larger than 3.
  PivotalSpace( Domain domain, bool require_ex01 );

  const Domain& domain() const noexcept { return domain_; }
  bool require_ex01() const noexcept { return require_ex01_; }
  std::uint64_t count() const noexcept { return count_; }
  const std::vector<std::size_t>& free_positions() const noexcept { return free_; }

  /// Writes the table of candidate `id` (< count()) into `out` (m^3 entries).
  void fill( std::uint64_t id, Element* out ) const;
  /// Advances `table` to the next candidate; false after the last one.
  bool advance( Element* table ) const noexcept;

  PivotalOperation operator[]( std::uint64_t id ) const;

  /// Candidate id of a table, if it lies in this space.
  std::optional<std::uint64_t> id_of( const Operation& op ) const;

private:
  Domain domain_;
  bool require_ex01_;
  std::vector<Element> fixed_; ///< template table, free entries zero
  std::vector<std::size_t> free_;
  std::uint64_t count_;
};

/// All candidates of a small space, in id order.
std::vector<PivotalOperation> enumerate_pivotal( const Domain& domain, bool require_ex01 );

struct CensusFlags
{
  bool ex01 = false;
  bool sym01 = false;
  bool sym02 = false;
  bool symmetric = false;
  bool ex04 = false;
  bool fine01 = false;
  bool fine02 = false;
  bool symmetry_pair = false; ///< the two equations named thm28
  bool derived = false;       ///< all four derived equations
  bool self_decomposable = false;
  bool delta_shaped = false; ///< ex01 and x-independent on every delta pair

  friend bool operator==( const CensusFlags&, const CensusFlags& ) = default;
};

CensusFlags compute_flags( TernaryView pi ) noexcept;

/// Flag names in serialization order; `flag_value` reads one by name.
const std::vector<std::string_view>& flag_names();
std::optional<bool> flag_value( const CensusFlags& flags, std::string_view name ) noexcept;

struct ClassificationRecord
{
  std::uint64_t id = 0;
  std::vector<Element> table;
  CensusFlags flags;
  /// certified / bounded-verified / sampled / refuted / unverified, or none
  /// when no clone evidence was computed.
  std::string clone_verdict = "none";
  std::vector<std::size_t> lambda_sizes; ///< arities 1..cap when computed

  friend bool operator==( const ClassificationRecord&, const ClassificationRecord& ) = default;
};

nlohmann::json to_json( const ClassificationRecord& record );
ClassificationRecord record_from_json( const nlohmann::json& j );

/// Flags plus, when arity_cap > 0, Λ sizes and a bounded clone verdict.
ClassificationRecord classify( const PivotalOperation& pi, unsigned arity_cap, const Budget& budget = {},
                               std::uint64_t id = 0 );

/// Monotone n-ary Boolean functions, by direct comparison of all tuple pairs.
std::vector<Operation> monotone_boolean_functions( unsigned arity );

struct BooleanClassEntry
{
  std::uint64_t id = 0;
  std::string closed_form;  ///< matching name among pi0..pi3, empty if none
  std::string section_0_1;  ///< Π(x,0,1) as "x", "not x", "0" or "1"
  std::vector<std::string> lambda_class; ///< per arity: "monotone", "all" or "other"
};

struct BooleanCensus
{
  unsigned arity_cap = 0;
  std::vector<ClassificationRecord> records; ///< all 16
  std::vector<BooleanClassEntry> ex01_entries;
  /// Sweeps of each statement over the 16 operations: count of holds / violated / vacuous.
  struct Tally
  {
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t vacuous = 0;
    std::size_t inconclusive = 0;
    void add( TheoremStatus s ) noexcept;
  };
  Tally cyclic_implies_symmetric;
  Tally symmetry_characterization;
  Tally projections_iff_ex01;
  Tally ex01_criterion;
  Tally fine_characterization;
  Tally derived_under_ex01;
};

BooleanCensus boolean_census( unsigned arity_cap, const Budget& budget = {} );
nlohmann::json to_json( const BooleanCensus& census );

struct CensusCounts
{
  std::uint64_t total = 0;
  std::uint64_t ex01 = 0;
  std::uint64_t ex04 = 0;
  std::uint64_t self_decomposable = 0;
  std::uint64_t ex04_not_self_decomposable = 0;
  std::uint64_t ex01_ex04 = 0;
  std::uint64_t ex01_ex04_not_self_decomposable = 0;
  std::uint64_t symmetric = 0;
  std::uint64_t sym01 = 0;
  std::uint64_t sym02 = 0;
  std::uint64_t fine01 = 0;
  std::uint64_t fine02 = 0;
  std::uint64_t symmetry_pair = 0;
  std::uint64_t derived = 0;
  std::uint64_t derived_violations_ex01 = 0;      ///< ex01 and not derived
  std::uint64_t derived_violations_ex01_self = 0; ///< ex01, self-decomposable and not derived
  std::uint64_t delta_shaped = 0;
  std::uint64_t delta_shaped_ex04 = 0;
  std::uint64_t cyclic_symmetry_violations = 0;     ///< self-dec, ex01, sym01, not symmetric
  std::uint64_t symmetry_characterization_violations = 0; ///< self-dec, ex01, symmetric != pair
  std::uint64_t certified = 0;                      ///< ex01 and ex04
  std::uint64_t emitted = 0;                        ///< records passing the emit filter

  CensusCounts& operator+=( const CensusCounts& o ) noexcept;
  void add( const CensusFlags& f ) noexcept;
  friend bool operator==( const CensusCounts&, const CensusCounts& ) = default;
};

nlohmann::json to_json( const CensusCounts& counts );

struct CensusOptions
{
  bool require_ex01 = true;
  bool flags_only = true;
  unsigned arity_cap = 0;        ///< ignored when flags_only
  std::uint64_t resume = 0;      ///< first candidate id
  std::optional<std::uint64_t> limit; ///< candidates to process in this run
  unsigned threads = 0;          ///< 0 = hardware concurrency
  std::uint64_t chunk_size = 1 << 16;
  std::vector<std::string> emit_only; ///< flag names that must all be set for a record to be emitted
  Budget budget;
};

struct CensusSummary
{
  Domain domain{ 2 };
  bool require_ex01 = true;
  std::uint64_t space_size = 0;
  std::uint64_t start = 0;
  std::uint64_t next_cursor = 0; ///< resume point; == space_size when complete
  bool complete = false;
  CensusCounts counts;
  std::optional<std::uint64_t> first_ex04_not_self_decomposable;
  std::optional<std::uint64_t> first_derived_violation_ex01;
};

nlohmann::json to_json( const CensusSummary& summary );

/// Receives NDJSON record lines in id order, in batches.
using RecordSink = std::function<void( std::string_view lines )>;

/// Classifies candidates [resume, resume + limit) in parallel over chunks and
/// merges in chunk order, so results do not depend on the thread count.
CensusSummary run_census( const Domain& domain, const CensusOptions& options, const RecordSink& sink = {} );

} // namespace pivotal
