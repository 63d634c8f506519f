#pragma once

// Border-rank bounds for monomials and general tensors: chart upper bounds,
// the catalecticant and disjoint-module lower bounds, closed forms, and the
// two necessary tests for minimal border rank.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apolar/apolarity.hpp"
#include "apolar/macaulay.hpp"

namespace apolar {

/// The chart dropping one variable per factor.
struct ChartBound {
  Integer value;
  std::vector<std::size_t> dropped;  // flat variable index dropped in each factor
};

/// min over charts of prod (a_v + 1) over the kept variables.
ChartBound upper_bound_monomial(const Tensor& f);

/// Sum of the chart bounds of the terms of F.
Integer upper_bound_by_terms(const Tensor& f);

/// The configuration that rules out the witness rank r.
struct DisjointModuleWitness {
  std::size_t base_factor = 0;  // the P^n factor carrying the Lex-bar argument
  int d = 0;                    // degree on the base factor
  MultiDegree degree;           // full multidegree (d, D_Y)
  MultiDegree next_degree;      // (d + 1, D_Y)
  Integer ruled_out;            // largest r shown impossible
  Integer piece_dim;            // dim S at degree
  Integer apolar_dim;           // dim F-perp at degree
  Integer next_piece_dim;
  Integer next_apolar_dim;
  Integer required_codim;       // codim of I in F-perp at degree
  Integer next_required_codim;  // codim of I in F-perp at next_degree
  Integer unreached;            // dim of F-perp at next_degree outside the image of the summands
  Integer multiplicity;         // dim H^0(Y, D_Y)
  LexBarProfile profile;
};

struct DisjointModuleBound {
  Integer value;                                // max(catalecticant, 1 + ruled_out)
  Integer catalecticant;
  std::optional<DisjointModuleWitness> witness;  // absent when nothing beyond catalecticant was ruled out
};

/// Checks a single (base factor, d, r) configuration; nullopt when d violates
/// the direct-sum condition.
std::optional<bool> disjoint_module_rules_out(const Tensor& f, std::size_t base_factor, int d, const Integer& r,
                                             DisjointModuleWitness* witness = nullptr);

/// Scans every valid degree and every r below the chart bound. Shapes other
/// than P^n x (P^1)^k raise UnsupportedShape.
DisjointModuleBound disjoint_module_lower_bound(const Tensor& f, int threads = 0);

/// Exact border rank for monomials on P^1, P^2 and P^2 x (P^1)^k.
Integer closed_form_border_rank(const Tensor& f);
bool closed_form_supported(const FactorShape& shape);

/// Exact value when a_0 >= a_1 + ... + a_n - 1 for the largest exponent a_0.
std::optional<Integer> almost_unbalanced_check(const Tensor& f);

enum class MinimalVerdict { NecessaryConditionHolds, NotMinimalBorderRank };
std::string to_string(MinimalVerdict v);

struct MinimalTestResult {
  Integer value;     // generator count or quotient dimension
  Integer threshold; // value below this certifies the verdict
  MinimalVerdict verdict;
};

/// Minimal generators of F-perp in degree L on (P^a)^w; fewer than a
/// certifies F is not of minimal border rank.
MinimalTestResult minimal_border_rank_generator_test(const Tensor& f);

/// dim S_L / (F-perp_{L - e_j} * S_{e_j}) for the factor j; below a_j + 1
/// certifies F is not of minimal border rank. j must have maximal dimension.
MinimalTestResult minimal_border_rank_quotient_test(const Tensor& f, std::size_t factor);

/// Every bound that applies to F, with provenance and witnesses.
nlohmann::json bound_report(const Tensor& f, int threads = 0);

}  // namespace apolar
