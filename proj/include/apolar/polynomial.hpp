#pragma once

#include <map>
#include <optional>

#include <json.hpp>

#include "apolar/ring.hpp"

namespace apolar {

/// Sparse polynomial with exact rational coefficients, terms kept in
/// descending grevlex order. Also used for elements of the divided-power dual
/// ring, where a key x^(a) stands for the divided-power monomial.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexDescending>;

  explicit Polynomial(FactorShape shape) : shape_(std::move(shape)) {}
  Polynomial(FactorShape shape, const Monomial& m, Rational c = 1);

  const FactorShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds c * m; zero coefficients are dropped.
  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  /// The common multidegree of all terms, or nullopt when inhomogeneous or zero.
  std::optional<MultiDegree> homogeneous_degree() const;

  Polynomial operator*(const Monomial& m) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;

  bool operator==(const Polynomial& o) const { return shape_ == o.shape_ && terms_ == o.terms_; }

 private:
  FactorShape shape_;
  TermMap terms_;
};

/// Coordinates of a homogeneous polynomial in a graded-piece basis.
std::vector<Rational> coordinates(const Polynomial& p, const MonomialBasis& basis);

Polynomial from_coordinates(const FactorShape& shape, const MonomialBasis& basis, const std::vector<Rational>& v);

std::string rational_to_string(const Rational& q);

// Term list format: [{"exp": [[...],...], "num": "...", "den": "..."}].
nlohmann::json terms_to_json(const Polynomial& p);
Polynomial terms_from_json(const FactorShape& shape, const nlohmann::json& j);

Rational rational_from_strings(const std::string& num, const std::string& den);

}  // namespace apolar
