#pragma once

// The move-fit search: look for a monomial ideal inside F-perp whose Hilbert
// function is min(r, dim S_D) in every degree of total degree <= T.
// Exhaustion proves border rank > r. A found ideal is only a candidate: it
// is not checked to be a limit of saturated ideals of points.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apolar/apolarity.hpp"
#include "apolar/ideals.hpp"

namespace apolar {

/// min(r, dim S_D).
Integer generic_hilbert(const FactorShape& shape, const Integer& r, const MultiDegree& d);

struct SearchConfig {
  long r = 1;
  int horizon = 0;  // 0 means the total degree of L
  bool symmetry_pruning = true;
  bool growth_pruning = false;
  int parallel_width = 1;  // 0 means the OpenMP default
  std::optional<std::uint64_t> node_budget;
};

enum class SearchStatus { Exhausted, Found, BudgetExceeded };
std::string to_string(SearchStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_overflow = 0;   // mandatory multiples exceed dim I_D
  std::uint64_t pruned_shortage = 0;   // too few apolar monomials left
  std::uint64_t pruned_lookahead = 0;  // multiples already exceed a later dim I_D
  std::uint64_t pruned_symmetry = 0;
  std::uint64_t pruned_growth = 0;
  double seconds = 0;

  SearchStats& operator+=(const SearchStats& o);
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  int horizon = 0;
  long r = 0;
  std::optional<MonomialIdeal> candidate;
  std::map<MultiDegree, std::vector<Monomial>> pieces;  // the candidate's pieces
  SearchStats stats;
};

/// Single-worker depth-first search; the reference for the parallel version.
SearchOutcome search_serial(const Tensor& f, const SearchConfig& config);

/// Partitions the search forest among parallel_width workers. Status and
/// candidate agree with search_serial.
SearchOutcome search(const Tensor& f, const SearchConfig& config);

nlohmann::json outcome_to_json(const SearchOutcome& outcome, const FactorShape& shape);

struct VerifyRow {
  MultiDegree degree;
  Integer piece_dim;
  Integer required_quotient;
  Integer actual_quotient;
  bool ok = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool hilbert_ok = false;
  bool contained = false;
  std::map<MultiDegree, std::size_t> generator_counts;  // degrees with minimal generators, total <= T
  std::optional<bool> saturated;  // nullopt: no witness of non-saturation up to T
  std::optional<MultiDegree> non_saturation_degree;
  std::optional<MonomialIdeal> saturation;  // monomial ideals only
  std::map<MultiDegree, HilbertValue> saturation_hilbert;
  bool passed() const { return hilbert_ok && contained; }
};

VerifyReport verify_candidate(const AnyIdeal& ideal, const Tensor& f, const Integer& r, int horizon, int threads = 0);

nlohmann::json verify_to_json(const VerifyReport& report);

}  // namespace apolar
