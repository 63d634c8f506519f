#include "apolar/ideals.hpp"

#include <algorithm>

#include "apolar/error.hpp"
#include "apolar/parallel.hpp"

namespace apolar {

GradedIdeal::GradedIdeal(FactorShape shape, std::vector<Polynomial> generators) : shape_(std::move(shape)) {
  for (auto& g : generators) add_generator(std::move(g));
}

void GradedIdeal::add_generator(Polynomial g) {
  if (!(g.shape() == shape_)) throw DimensionMismatch("generator lives over a different shape");
  auto d = g.homogeneous_degree();
  if (!d) throw PreconditionError("ideal generators must be non-zero and homogeneous");
  degrees_.push_back(std::move(*d));
  generators_.push_back(std::move(g));
}

GradedIdeal GradedIdeal::from_monomial(const MonomialIdeal& ideal) {
  GradedIdeal out(ideal.shape());
  for (const auto& g : ideal.generators()) out.add_generator(Polynomial(ideal.shape(), g, 1));
  return out;
}

const FactorShape& shape_of(const AnyIdeal& ideal) {
  return std::visit([](const auto& i) -> const FactorShape& { return i.shape(); }, ideal);
}

std::vector<Monomial> monomial_piece(const MonomialIdeal& ideal, const MultiDegree& d) {
  check_degree_length(ideal.shape(), d);
  if (!d.effective()) throw PreconditionError("monomial_piece needs an effective degree");
  std::vector<Monomial> out;
  if (ideal.is_zero()) return out;
  for (auto& m : enumerate_monomials(ideal.shape(), d))
    if (ideal.contains(m)) out.push_back(std::move(m));
  return out;
}

namespace {

// Spanning set g*m of I_D as coordinate rows.
RationalMatrix spanning_rows(const GradedIdeal& ideal, const MonomialBasis& basis) {
  const MultiDegree& d = basis.degree();
  RationalMatrix rows(0, basis.size());
  for (std::size_t k = 0; k < ideal.generators().size(); ++k) {
    const MultiDegree rest = d - ideal.generator_degree(k);
    if (!rest.effective()) continue;
    for (const auto& m : enumerate_monomials(ideal.shape(), rest))
      rows.append_row(coordinates(ideal.generators()[k] * m, basis));
  }
  return rows;
}

// Reduces v modulo the rows of a reduced echelon form.
void reduce_modulo(std::vector<Rational>& v, const Echelon& e) {
  for (std::size_t k = 0; k < e.rank(); ++k) {
    const std::size_t p = e.pivots[k];
    if (v[p] == 0) continue;
    const Rational factor = v[p];
    for (std::size_t c = 0; c < v.size(); ++c) {
      const Rational& x = e.reduced(k, c);
      if (x != 0) v[c] -= factor * x;
    }
  }
}

}  // namespace

IdealPiece graded_piece(const GradedIdeal& ideal, const MultiDegree& d) {
  check_degree_length(ideal.shape(), d);
  if (!d.effective()) throw PreconditionError("graded_piece needs an effective degree");
  MonomialBasis basis(ideal.shape(), d);
  Echelon e = row_reduce(spanning_rows(ideal, basis));
  return IdealPiece{std::move(basis), std::move(e.reduced)};
}

HilbertValue hilbert_function(const MonomialIdeal& ideal, const MultiDegree& d) {
  const std::size_t total = piece_dimension(ideal.shape(), d).get_ui();
  const std::size_t in = monomial_piece(ideal, d).size();
  return HilbertValue{in, total - in};
}

HilbertValue hilbert_function(const GradedIdeal& ideal, const MultiDegree& d) {
  const IdealPiece piece = graded_piece(ideal, d);
  return HilbertValue{piece.dimension(), piece.basis.size() - piece.dimension()};
}

HilbertValue hilbert_function(const AnyIdeal& ideal, const MultiDegree& d) {
  return std::visit([&](const auto& i) { return hilbert_function(i, d); }, ideal);
}

HilbertRecord hilbert_record_serial(const AnyIdeal& ideal, int max_total) {
  HilbertRecord out;
  for (const auto& d : degrees_up_to(shape_of(ideal).factor_count(), max_total)) out.emplace(d, hilbert_function(ideal, d));
  return out;
}

HilbertRecord hilbert_record(const AnyIdeal& ideal, int max_total, int threads) {
  const auto degrees = degrees_up_to(shape_of(ideal).factor_count(), max_total);
  std::vector<HilbertValue> values(degrees.size());
  const long n = static_cast<long>(degrees.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (long k = 0; k < n; ++k) {
    values[static_cast<std::size_t>(k)] = hilbert_function(ideal, degrees[static_cast<std::size_t>(k)]);
  }
  HilbertRecord out;
  for (std::size_t k = 0; k < degrees.size(); ++k) out.emplace(degrees[k], values[k]);
  return out;
}

MonomialIdeal colon(const MonomialIdeal& ideal, const Monomial& m) {
  if (m.variable_count() != ideal.shape().variable_count()) throw DimensionMismatch("colon by a monomial of another ring");
  std::vector<Monomial> gens;
  for (const auto& g : ideal.generators()) {
    std::vector<int> e(g.exponents());
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = std::max(e[v] - m.exponent(v), 0);
    gens.emplace_back(ideal.shape(), std::move(e));
  }
  return MonomialIdeal(ideal.shape(), std::move(gens));
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (!(a.shape() == b.shape())) throw DimensionMismatch("intersection of ideals over different shapes");
  std::vector<Monomial> gens;
  for (const auto& g : a.generators())
    for (const auto& h : b.generators()) gens.push_back(lcm(a.shape(), g, h));
  return MonomialIdeal(a.shape(), std::move(gens));
}

std::vector<Monomial> irrelevant_generators(const FactorShape& shape) {
  std::vector<Monomial> out;
  std::vector<int> choice(shape.factor_count(), 0);
  while (true) {
    std::vector<int> e(shape.variable_count(), 0);
    for (std::size_t j = 0; j < shape.factor_count(); ++j) e[shape.offset(j) + static_cast<std::size_t>(choice[j])] = 1;
    out.emplace_back(shape, std::move(e));
    std::size_t j = 0;
    while (j < choice.size() && choice[j] == shape.factor_dim(j)) choice[j++] = 0;
    if (j == choice.size()) break;
    ++choice[j];
  }
  return out;
}

MonomialIdeal saturate(const MonomialIdeal& ideal) {
  const auto b = irrelevant_generators(ideal.shape());
  MonomialIdeal current = ideal;
  while (true) {
    MonomialIdeal next = colon(current, b.front());
    for (std::size_t k = 1; k < b.size(); ++k) next = intersect(next, colon(current, b[k]));
    if (next == current) return current;
    current = std::move(next);
  }
}

std::size_t irrelevant_colon_dimension(const GradedIdeal& ideal, const MultiDegree& d) {
  check_degree_length(ideal.shape(), d);
  const FactorShape& shape = ideal.shape();
  const MultiDegree up = d + MultiDegree(std::vector<int>(shape.factor_count(), 1));
  const IdealPiece upper = graded_piece(ideal, up);
  const Echelon e = row_reduce(upper.rows);
  const MonomialBasis lower(shape, d);
  const auto b = irrelevant_generators(shape);
  // Row f: the normal forms of f*b modulo I_{D+1}, concatenated over b.
  RationalMatrix map(lower.size(), b.size() * upper.basis.size());
  for (std::size_t r = 0; r < lower.size(); ++r) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      std::vector<Rational> v(upper.basis.size());
      v[static_cast<std::size_t>(upper.basis.index_of(lower[r] * b[k]))] = 1;
      reduce_modulo(v, e);
      for (std::size_t c = 0; c < v.size(); ++c) map(r, k * upper.basis.size() + c) = v[c];
    }
  }
  return lower.size() - rank(map);
}

namespace {

// Every element of a spanning set of I_D, for D <= L, as a polynomial.
template <typename Visit>
void for_each_spanning(const AnyIdeal& ideal, const MultiDegree& d, Visit&& visit) {
  const FactorShape& shape = shape_of(ideal);
  if (const auto* mono = std::get_if<MonomialIdeal>(&ideal)) {
    for (const auto& m : monomial_piece(*mono, d)) visit(Polynomial(shape, m, 1));
    return;
  }
  const auto& graded = std::get<GradedIdeal>(ideal);
  for (std::size_t k = 0; k < graded.generators().size(); ++k) {
    const MultiDegree rest = d - graded.generator_degree(k);
    if (!rest.effective()) continue;
    for (const auto& m : enumerate_monomials(shape, rest)) visit(graded.generators()[k] * m);
  }
}

void check_generator_degrees(const AnyIdeal& ideal, const Tensor& f) {
  if (!(shape_of(ideal) == f.shape())) throw DimensionMismatch("ideal and tensor live over different shapes");
  if (const auto* mono = std::get_if<MonomialIdeal>(&ideal)) {
    for (const auto& g : mono->generators())
      if (!g.degree().effective()) throw PreconditionError("generator of non-effective degree");
    return;
  }
  const auto& graded = std::get<GradedIdeal>(ideal);
  for (std::size_t k = 0; k < graded.generators().size(); ++k)
    if (!graded.generator_degree(k).effective()) throw PreconditionError("generator of non-effective degree");
}

}  // namespace

bool contained_in_apolar(const AnyIdeal& ideal, const Tensor& f) {
  check_generator_degrees(ideal, f);
  bool ok = true;
  // In degree L the hook lands in degree 0: p annihilates F iff sum_t p_t F_t = 0.
  for_each_spanning(ideal, f.degree(), [&](const Polynomial& p) {
    if (!ok) return;
    Rational pairing = 0;
    for (const auto& [t, c] : p.terms()) pairing += c * f.coefficients().coefficient(t);
    if (pairing != 0) ok = false;
  });
  return ok;
}

bool contained_in_apolar_all_degrees(const AnyIdeal& ideal, const Tensor& f) {
  check_generator_degrees(ideal, f);
  bool ok = true;
  for (const auto& d : degrees_below(f.degree())) {
    for_each_spanning(ideal, d, [&](const Polynomial& p) {
      if (ok && !hook_tensor(p, f).is_zero()) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

std::size_t minimal_generator_count(const FactorShape& shape, const PieceFunction& piece, const MultiDegree& d) {
  check_degree_length(shape, d);
  if (!d.effective()) throw PreconditionError("minimal_generator_count needs an effective degree");
  const MonomialBasis basis(shape, d);
  const std::size_t full = rank(piece(d));
  RationalMatrix lower(0, basis.size());
  for (std::size_t v = 0; v < shape.variable_count(); ++v) {
    const MultiDegree below = d - MultiDegree::unit(shape.factor_count(), shape.factor_of(v));
    if (!below.effective()) continue;
    const MonomialBasis sub(shape, below);
    const RationalMatrix rows = piece(below);
    const Monomial x = Monomial::variable(shape, v);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      std::vector<Rational> out(basis.size());
      for (std::size_t c = 0; c < sub.size(); ++c) {
        if (rows(r, c) != 0) out[static_cast<std::size_t>(basis.index_of(sub[c] * x))] = rows(r, c);
      }
      lower.append_row(out);
    }
  }
  return full - rank(lower);
}

std::size_t minimal_generator_count(const GradedIdeal& ideal, const MultiDegree& d) {
  return minimal_generator_count(ideal.shape(), [&](const MultiDegree& e) { return graded_piece(ideal, e).rows; }, d);
}

std::size_t minimal_generator_count(const MonomialIdeal& ideal, const MultiDegree& d) {
  return minimal_generator_count(
      ideal.shape(),
      [&](const MultiDegree& e) {
        const MonomialBasis basis(ideal.shape(), e);
        const auto piece = monomial_piece(ideal, e);
        RationalMatrix rows(piece.size(), basis.size());
        for (std::size_t k = 0; k < piece.size(); ++k) rows(k, static_cast<std::size_t>(basis.index_of(piece[k]))) = 1;
        return rows;
      },
      d);
}

std::size_t apolar_minimal_generator_count(const Tensor& f, const MultiDegree& d) {
  return minimal_generator_count(f.shape(), [&](const MultiDegree& e) { return apolar_piece(f, e).kernel; }, d);
}

nlohmann::json ideal_to_json(const AnyIdeal& ideal) {
  const FactorShape& shape = shape_of(ideal);
  nlohmann::json j{{"shape", shape_to_json(shape)}};
  if (const auto* mono = std::get_if<MonomialIdeal>(&ideal)) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : mono->generators()) gens.push_back(format_monomial(shape, g));
    j["monomial_generators"] = std::move(gens);
    return j;
  }
  const auto& graded = std::get<GradedIdeal>(ideal);
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t k = 0; k < graded.generators().size(); ++k) {
    gens.push_back({{"degree", degree_to_json(graded.generator_degree(k))}, {"terms", terms_to_json(graded.generators()[k])}});
  }
  j["generators"] = std::move(gens);
  return j;
}

AnyIdeal ideal_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("ideal document must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "shape" && key != "monomial_generators" && key != "generators")
      throw ParseError("unknown ideal field '" + key + "'");
  }
  if (!j.contains("shape")) throw ParseError("ideal needs 'shape'");
  if (j.contains("monomial_generators") == j.contains("generators"))
    throw ParseError("ideal needs exactly one of 'monomial_generators' and 'generators'");
  FactorShape shape = shape_from_json(j.at("shape"));
  if (j.contains("monomial_generators")) {
    const auto& list = j.at("monomial_generators");
    if (!list.is_array()) throw ParseError("'monomial_generators' must be an array");
    std::vector<Monomial> gens;
    for (const auto& g : list) gens.push_back(monomial_from_json(shape, g));
    return MonomialIdeal(shape, std::move(gens));
  }
  const auto& list = j.at("generators");
  if (!list.is_array()) throw ParseError("'generators' must be an array");
  GradedIdeal out(shape);
  for (const auto& g : list) {
    if (!g.is_object()) throw ParseError("generator must be an object");
    for (const auto& [key, value] : g.items()) {
      if (key != "degree" && key != "terms") throw ParseError("unknown generator field '" + key + "'");
    }
    if (!g.contains("degree") || !g.contains("terms")) throw ParseError("generator needs 'degree' and 'terms'");
    const MultiDegree tag = degree_from_json(g.at("degree"));
    Polynomial p = terms_from_json(shape, g.at("terms"));
    const auto d = p.homogeneous_degree();
    if (!d) throw ParseError("generator is zero or inhomogeneous");
    if (*d != tag) throw ParseError("generator degree tag " + tag.to_string() + " differs from its terms " + d->to_string());
    out.add_generator(std::move(p));
  }
  return out;
}

}  // namespace apolar
