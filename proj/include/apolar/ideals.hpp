#pragma once

// Monomial ideals and generator-presented homogeneous ideals: graded pieces,
// Hilbert functions, colon and saturation, apolar containment and minimal
// generator counts. Pieces of generator-presented ideals are computed afresh
// per degree by exact row reduction.

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "apolar/apolarity.hpp"
#include "apolar/linalg.hpp"
#include "apolar/monomial_ideal.hpp"
#include "apolar/polynomial.hpp"

namespace apolar {

/// Homogeneous ideal presented by polynomial generators.
class GradedIdeal {
 public:
  explicit GradedIdeal(FactorShape shape) : shape_(std::move(shape)) {}
  GradedIdeal(FactorShape shape, std::vector<Polynomial> generators);

  const FactorShape& shape() const { return shape_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const MultiDegree& generator_degree(std::size_t k) const { return degrees_[k]; }

  void add_generator(Polynomial g);

  static GradedIdeal from_monomial(const MonomialIdeal& ideal);

 private:
  FactorShape shape_;
  std::vector<Polynomial> generators_;
  std::vector<MultiDegree> degrees_;
};

using AnyIdeal = std::variant<MonomialIdeal, GradedIdeal>;

const FactorShape& shape_of(const AnyIdeal& ideal);

/// All degree-D monomials divisible by some generator, descending grevlex.
std::vector<Monomial> monomial_piece(const MonomialIdeal& ideal, const MultiDegree& d);

/// Reduced row echelon basis of I_D in the grevlex basis of S_D.
struct IdealPiece {
  MonomialBasis basis;
  RationalMatrix rows;
  std::size_t dimension() const { return rows.rows(); }
};

IdealPiece graded_piece(const GradedIdeal& ideal, const MultiDegree& d);

struct HilbertValue {
  std::size_t ideal_dim = 0;     // dim I_D
  std::size_t quotient_dim = 0;  // dim (S/I)_D
  bool operator==(const HilbertValue&) const = default;
};

HilbertValue hilbert_function(const MonomialIdeal& ideal, const MultiDegree& d);
HilbertValue hilbert_function(const GradedIdeal& ideal, const MultiDegree& d);
HilbertValue hilbert_function(const AnyIdeal& ideal, const MultiDegree& d);

/// Hilbert function on every effective degree of total degree <= max_total.
using HilbertRecord = std::map<MultiDegree, HilbertValue>;

HilbertRecord hilbert_record(const AnyIdeal& ideal, int max_total, int threads = 0);
HilbertRecord hilbert_record_serial(const AnyIdeal& ideal, int max_total);

MonomialIdeal colon(const MonomialIdeal& ideal, const Monomial& m);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);

/// Generators of the irrelevant ideal: one variable from each factor.
std::vector<Monomial> irrelevant_generators(const FactorShape& shape);

/// Fixpoint of I -> (I : B) for the irrelevant ideal B.
MonomialIdeal saturate(const MonomialIdeal& ideal);

/// dim (I : B)_D for a generator-presented ideal, by exact linear algebra.
/// Exceeding dim I_D certifies that I is not saturated.
std::size_t irrelevant_colon_dimension(const GradedIdeal& ideal, const MultiDegree& d);

/// I is contained in F-perp iff I_L is. Generators whose degree is not <= L
/// annihilate F automatically; a generator of non-effective degree is an error.
bool contained_in_apolar(const AnyIdeal& ideal, const Tensor& f);

/// Independent check of the same property over every effective D <= L.
bool contained_in_apolar_all_degrees(const AnyIdeal& ideal, const Tensor& f);

/// A family of graded pieces, each given as coordinate rows over the grevlex
/// basis of S_D.
using PieceFunction = std::function<RationalMatrix(const MultiDegree&)>;

/// dim I_D - dim(sum over variables of I_{D - deg x} * x).
std::size_t minimal_generator_count(const FactorShape& shape, const PieceFunction& piece, const MultiDegree& d);
std::size_t minimal_generator_count(const GradedIdeal& ideal, const MultiDegree& d);
std::size_t minimal_generator_count(const MonomialIdeal& ideal, const MultiDegree& d);
std::size_t apolar_minimal_generator_count(const Tensor& f, const MultiDegree& d);

// Ideal file format: {"shape":[...], "monomial_generators":[...]} with
// monomials in text or {"exponents":...} form, or
// {"shape":[...], "generators":[{"degree":[...], "terms":[...]}]}.
nlohmann::json ideal_to_json(const AnyIdeal& ideal);
AnyIdeal ideal_from_json(const nlohmann::json& j);

}  // namespace apolar
