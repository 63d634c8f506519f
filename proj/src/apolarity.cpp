#include "apolar/apolarity.hpp"

#include <algorithm>

#include "apolar/error.hpp"
#include "apolar/parallel.hpp"

namespace apolar {

Tensor::Tensor(FactorShape shape, MultiDegree degree) : degree_(std::move(degree)), coeffs_(std::move(shape)) {
  check_degree_length(coeffs_.shape(), degree_);
  if (!degree_.effective()) throw PreconditionError("tensor degree must be effective");
}

Tensor::Tensor(MultiDegree degree, Polynomial coefficients) : degree_(std::move(degree)), coeffs_(std::move(coefficients)) {
  check_degree_length(coeffs_.shape(), degree_);
  if (!degree_.effective()) throw PreconditionError("tensor degree must be effective");
  for (const auto& [m, c] : coeffs_.terms()) {
    if (m.degree() != degree_)
      throw PreconditionError("tensor term of degree " + m.degree().to_string() + " in a tensor of degree " +
                              degree_.to_string());
  }
}

const Monomial& Tensor::support_monomial() const {
  if (!is_monomial()) throw PreconditionError("tensor is not a single monomial");
  return coeffs_.terms().begin()->first;
}

Tensor monomial_tensor(const FactorShape& shape, const std::vector<int>& exponents) {
  Monomial m(shape, exponents);
  MultiDegree d = m.degree();
  return Tensor(std::move(d), Polynomial(shape, m, 1));
}

std::optional<Monomial> hook(const Monomial& theta, const Monomial& m) {
  if (!theta.divides(m)) return std::nullopt;
  return m.quotient(theta);
}

Tensor hook_tensor(const Polynomial& theta, const Tensor& f) {
  if (!(theta.shape() == f.shape())) throw DimensionMismatch("operator and tensor live over different shapes");
  const auto d = theta.homogeneous_degree();
  if (!d) throw PreconditionError("hook_tensor needs a non-zero homogeneous operator");
  if (!d->fits_in(f.degree()))
    throw PreconditionError("operator degree " + d->to_string() + " exceeds tensor degree " + f.degree().to_string());
  Polynomial out(f.shape());
  for (const auto& [t, ct] : theta.terms()) {
    for (const auto& [m, cm] : f.coefficients().terms()) {
      if (auto r = hook(t, m)) out.add_term(*r, ct * cm);
    }
  }
  return Tensor(f.degree() - *d, std::move(out));
}

Catalecticant catalecticant(const Tensor& f, const MultiDegree& d) {
  check_degree_length(f.shape(), d);
  MonomialBasis rows(f.shape(), d);
  MonomialBasis cols(f.shape(), f.degree() - d);
  RationalMatrix mat(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [m, c] : f.coefficients().terms()) {
      if (!rows[r].divides(m)) continue;
      const long k = cols.index_of(m.quotient(rows[r]));
      mat(r, static_cast<std::size_t>(k)) = c;
    }
  }
  return Catalecticant{std::move(rows), std::move(cols), std::move(mat)};
}

std::size_t catalecticant_rank(const Tensor& f, const MultiDegree& d) {
  if (!d.effective() || !d.fits_in(f.degree())) return 0;
  return rank(catalecticant(f, d).matrix);
}

ApolarPiece apolar_piece(const Tensor& f, const MultiDegree& d) {
  check_degree_length(f.shape(), d);
  if (!d.effective()) throw PreconditionError("apolar_piece needs an effective degree");
  if (!d.fits_in(f.degree())) {
    // theta hook F lands in a degree with a negative entry, so all of S_D annihilates.
    MonomialBasis basis(f.shape(), d);
    RationalMatrix id(basis.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) id(k, k) = 1;
    return ApolarPiece{std::move(basis), std::move(id)};
  }
  Catalecticant cat = catalecticant(f, d);
  RationalMatrix kernel = left_null_space(cat.matrix);
  return ApolarPiece{std::move(cat.rows), std::move(kernel)};
}

MonomialIdeal apolar_of_monomial(const Tensor& f) {
  if (!f.is_monomial()) throw PreconditionError("apolar_of_monomial needs a single-monomial tensor");
  const Monomial& a = f.support_monomial();
  std::vector<Monomial> gens;
  for (std::size_t v = 0; v < a.variable_count(); ++v) {
    std::vector<int> e(a.variable_count(), 0);
    e[v] = a.exponent(v) + 1;
    gens.emplace_back(f.shape(), std::move(e));
  }
  return MonomialIdeal(f.shape(), std::move(gens));
}

bool is_concise(const Tensor& f) {
  const std::size_t w = f.shape().factor_count();
  for (std::size_t j = 0; j < w; ++j) {
    if (apolar_piece(f, MultiDegree::unit(w, j)).dimension() != 0) return false;
  }
  return true;
}

std::vector<MultiDegree> degrees_below(const MultiDegree& l) {
  std::vector<MultiDegree> out;
  for (auto& d : degrees_up_to(l.size(), l.total()))
    if (d.fits_in(l)) out.push_back(std::move(d));
  return out;
}

std::vector<std::size_t> catalecticant_ranks_serial(const Tensor& f) {
  const auto degrees = degrees_below(f.degree());
  std::vector<std::size_t> ranks(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) ranks[k] = catalecticant_rank(f, degrees[k]);
  return ranks;
}

std::vector<std::size_t> catalecticant_ranks(const Tensor& f, int threads) {
  const auto degrees = degrees_below(f.degree());
  std::vector<std::size_t> ranks(degrees.size());
  const long n = static_cast<long>(degrees.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (long k = 0; k < n; ++k) ranks[static_cast<std::size_t>(k)] = catalecticant_rank(f, degrees[static_cast<std::size_t>(k)]);
  return ranks;
}

CatalecticantBound catalecticant_lower_bound(const Tensor& f, int threads) {
  if (f.is_zero()) throw PreconditionError("catalecticant bound of the zero tensor");
  const auto degrees = degrees_below(f.degree());
  const auto ranks = catalecticant_ranks(f, threads);
  CatalecticantBound best{0, degrees.front()};
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (ranks[k] > best.value) best = {ranks[k], degrees[k]};
  }
  return best;
}

Integer factorial_weight(const Monomial& m) {
  Integer w = 1;
  for (int e : m.exponents()) {
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(e));
    w *= fact;
  }
  return w;
}

nlohmann::json tensor_to_json(const Tensor& f, Convention convention) {
  Polynomial printed(f.shape());
  for (const auto& [m, c] : f.coefficients().terms()) {
    printed.add_term(m, convention == Convention::Plain ? Rational(c / Rational(factorial_weight(m))) : c);
  }
  return nlohmann::json{{"shape", shape_to_json(f.shape())},
                        {"degree", degree_to_json(f.degree())},
                        {"convention", convention == Convention::Plain ? "plain" : "divided"},
                        {"terms", terms_to_json(printed)}};
}

Convention tensor_convention(const nlohmann::json& j) {
  if (!j.contains("convention")) return Convention::Divided;
  const auto& c = j.at("convention");
  if (c == "divided") return Convention::Divided;
  if (c == "plain") return Convention::Plain;
  throw ParseError("convention must be \"divided\" or \"plain\"");
}

Tensor tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("tensor document must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "shape" && key != "degree" && key != "convention" && key != "terms")
      throw ParseError("unknown tensor field '" + key + "'");
  }
  if (!j.contains("shape") || !j.contains("degree") || !j.contains("terms"))
    throw ParseError("tensor needs 'shape', 'degree' and 'terms'");
  FactorShape shape = shape_from_json(j.at("shape"));
  MultiDegree degree = degree_from_json(j.at("degree"));
  if (degree.size() != shape.factor_count()) throw ParseError("tensor degree length does not match shape");
  const Convention conv = tensor_convention(j);
  Polynomial raw = terms_from_json(shape, j.at("terms"));
  Polynomial coeffs(shape);
  for (const auto& [m, c] : raw.terms()) {
    if (m.degree() != degree) throw ParseError("term degree " + m.degree().to_string() + " differs from tensor degree");
    coeffs.add_term(m, conv == Convention::Plain ? Rational(c * factorial_weight(m)) : c);
  }
  return Tensor(std::move(degree), std::move(coeffs));
}

}  // namespace apolar
