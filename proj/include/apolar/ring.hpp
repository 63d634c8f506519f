#pragma once

// Combinatorics of the Cox ring S[X] of X = P^{a_1} x ... x P^{a_w}:
// multidegrees, monomials, graded-piece dimensions and the grevlex order.
//
// Variables are numbered factor-major: the a_1+1 variables of the first
// factor come first, then those of the second factor, and so on.

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace apolar {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact binomial coefficient C(n, k); zero when k < 0, n < 0 or k > n.
Integer binomial(long n, long k);

class FactorShape {
 public:
  /// Every factor dimension must be >= 1.
  explicit FactorShape(std::vector<int> factors);

  /// Like the constructor but admits point factors (dimension 0).
  static FactorShape with_points(std::vector<int> factors);

  std::size_t factor_count() const { return factors_.size(); }
  int factor_dim(std::size_t j) const { return factors_[j]; }
  const std::vector<int>& factors() const { return factors_; }

  std::size_t variable_count() const { return offsets_.back(); }
  /// Index of the first variable of factor j.
  std::size_t offset(std::size_t j) const { return offsets_[j]; }
  std::size_t factor_of(std::size_t var) const { return factor_of_[var]; }

  bool operator==(const FactorShape& o) const { return factors_ == o.factors_; }

 private:
  struct Unchecked {};
  FactorShape(std::vector<int> factors, Unchecked);

  std::vector<int> factors_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> factor_of_;
};

/// An element of Pic(X) = Z^w.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::vector<int> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  int& operator[](std::size_t j) { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  bool effective() const;
  int total() const;
  /// Componentwise <=.
  bool fits_in(const MultiDegree& other) const;

  /// Unit degree of factor j in a w-factor ring.
  static MultiDegree unit(std::size_t w, std::size_t j);
  static MultiDegree zero(std::size_t w) { return MultiDegree(std::vector<int>(w, 0)); }

  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator-(const MultiDegree& o) const;

  /// Lexicographic on entries.
  auto operator<=>(const MultiDegree& o) const = default;

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// A monomial of S (or a divided-power monomial of the dual ring); the
/// multidegree is derived from the exponents at construction.
class Monomial {
 public:
  Monomial() = default;
  Monomial(const FactorShape& shape, std::vector<int> exponents);

  /// The constant monomial 1.
  static Monomial one(const FactorShape& shape);
  /// The variable with flat index var.
  static Monomial variable(const FactorShape& shape, std::size_t var);

  const std::vector<int>& exponents() const { return exps_; }
  int exponent(std::size_t var) const { return exps_[var]; }
  const MultiDegree& degree() const { return degree_; }
  int total_degree() const { return degree_.total(); }
  std::size_t variable_count() const { return exps_.size(); }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Componentwise difference; the divisor must divide this monomial.
  Monomial quotient(const Monomial& divisor) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

 private:
  Monomial(std::vector<int> exps, MultiDegree degree)
      : exps_(std::move(exps)), degree_(std::move(degree)) {}

  std::vector<int> exps_;
  MultiDegree degree_;
};

/// Componentwise maximum of the exponents.
Monomial lcm(const FactorShape& shape, const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Graded reverse lexicographic order. Higher total degree is larger; at
/// equal total degree m1 > m2 iff the last non-zero entry of m1 - m2 is
/// negative.
std::strong_ordering compare_grevlex(const Monomial& m1, const Monomial& m2);

/// Strict weak ordering putting grevlex-larger monomials first.
struct GrevlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grevlex(a, b) == std::strong_ordering::greater;
  }
};

/// dim S_D = prod_j C(a_j + d_j, a_j), or 0 for a degree with a negative entry.
Integer piece_dimension(const FactorShape& shape, const MultiDegree& degree);

/// All monomials of multidegree D in descending grevlex order.
std::vector<Monomial> enumerate_monomials(const FactorShape& shape, const MultiDegree& degree);

/// All effective multidegrees with total degree <= max_total, ordered by total
/// degree and then lexicographically.
std::vector<MultiDegree> degrees_up_to(std::size_t factor_count, int max_total);

/// The monomials of one graded piece with a reverse index.
class MonomialBasis {
 public:
  MonomialBasis(const FactorShape& shape, const MultiDegree& degree);

  const MultiDegree& degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t k) const { return monomials_[k]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  /// Position of m in the basis, or -1.
  long index_of(const Monomial& m) const;

 private:
  MultiDegree degree_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

void check_degree_length(const FactorShape& shape, const MultiDegree& degree);

// Text form: "a0^2*a1|b0" -- one block per factor separated by '|', factor j
// named by the letter 'a'+j, exponent 1 written without '^', empty block "1".
std::string format_monomial(const FactorShape& shape, const Monomial& m);
Monomial parse_monomial(const FactorShape& shape, std::string_view text);

// JSON form: {"exponents": [[e0,e1,...],[f0,...]]}.
nlohmann::json monomial_to_json(const FactorShape& shape, const Monomial& m);
Monomial monomial_from_json(const FactorShape& shape, const nlohmann::json& j);

/// Nested per-factor exponent array, shared by the tensor and ideal formats.
nlohmann::json nested_exponents(const FactorShape& shape, const Monomial& m);
Monomial monomial_from_nested(const FactorShape& shape, const nlohmann::json& j);

/// Name of a variable in the text form, e.g. "b2".
std::string variable_name(const FactorShape& shape, std::size_t var);

/// A JSON number when the value fits in 64 bits, a decimal string otherwise.
nlohmann::json integer_to_json(const Integer& n);

nlohmann::json shape_to_json(const FactorShape& shape);
FactorShape shape_from_json(const nlohmann::json& j);
nlohmann::json degree_to_json(const MultiDegree& d);
MultiDegree degree_from_json(const nlohmann::json& j);

}  // namespace apolar
