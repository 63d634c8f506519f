#pragma once

// The apolarity (hook) action of S on the divided-power dual ring,
// catalecticant maps and apolar ideals.

#include <optional>
#include <vector>

#include <json.hpp>

#include "apolar/linalg.hpp"
#include "apolar/monomial_ideal.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/ring.hpp"

namespace apolar {

enum class Convention { Divided, Plain };

/// A partially symmetric tensor F in the degree-L piece of the dual ring,
/// stored with divided-power coefficients.
class Tensor {
 public:
  /// The zero tensor of degree L.
  Tensor(FactorShape shape, MultiDegree degree);
  /// coefficients are divided-power coefficients; every term must have degree L.
  Tensor(MultiDegree degree, Polynomial coefficients);

  const FactorShape& shape() const { return coeffs_.shape(); }
  const MultiDegree& degree() const { return degree_; }
  const Polynomial& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.is_zero(); }
  bool is_monomial() const { return coeffs_.term_count() == 1; }
  /// Exponent vector of a monomial tensor (PreconditionError otherwise).
  const Monomial& support_monomial() const;

  bool operator==(const Tensor& o) const { return degree_ == o.degree_ && coeffs_ == o.coeffs_; }

 private:
  MultiDegree degree_;
  Polynomial coeffs_;
};

/// A single divided-power monomial x^(a) as a tensor.
Tensor monomial_tensor(const FactorShape& shape, const std::vector<int>& exponents);

/// theta hook x^(a) = x^(a - e) when e <= a, otherwise zero.
std::optional<Monomial> hook(const Monomial& theta, const Monomial& m);

/// Bilinear extension of hook; theta must be homogeneous of degree D <= L.
Tensor hook_tensor(const Polynomial& theta, const Tensor& f);

/// The catalecticant S_D -> dual piece of degree L - D in grevlex bases:
/// entry (e, m) is the coefficient of x^(e+m) in F.
struct Catalecticant {
  MonomialBasis rows;
  MonomialBasis cols;
  RationalMatrix matrix;
};

Catalecticant catalecticant(const Tensor& f, const MultiDegree& d);
std::size_t catalecticant_rank(const Tensor& f, const MultiDegree& d);

/// F-perp in degree D as coordinate rows over `basis`.
struct ApolarPiece {
  MonomialBasis basis;
  RationalMatrix kernel;
  std::size_t dimension() const { return kernel.rows(); }
};

ApolarPiece apolar_piece(const Tensor& f, const MultiDegree& d);

/// (alpha_i^{a_i+1} : all variables i) for a monomial F = x^(a).
MonomialIdeal apolar_of_monomial(const Tensor& f);

bool is_concise(const Tensor& f);

struct CatalecticantBound {
  std::size_t value = 0;
  MultiDegree degree;  // a degree attaining the maximum
};

/// Ranks of the catalecticants at every effective D <= L, in the order of
/// degrees_below(L). The parallel version distributes degrees over threads.
std::vector<std::size_t> catalecticant_ranks(const Tensor& f, int threads = 0);
std::vector<std::size_t> catalecticant_ranks_serial(const Tensor& f);

/// Effective degrees D <= L ordered by total degree then lexicographically.
std::vector<MultiDegree> degrees_below(const MultiDegree& l);

CatalecticantBound catalecticant_lower_bound(const Tensor& f, int threads = 0);

// Tensor file format:
// {"shape":[...], "degree":[...], "convention":"divided"|"plain",
//  "terms":[{"exp":[[...]], "num":"...", "den":"..."}]}
nlohmann::json tensor_to_json(const Tensor& f, Convention convention = Convention::Divided);
Tensor tensor_from_json(const nlohmann::json& j);
Convention tensor_convention(const nlohmann::json& j);

/// prod_v a_v! for converting plain coefficients to divided-power ones.
Integer factorial_weight(const Monomial& m);

}  // namespace apolar
