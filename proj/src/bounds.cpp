#include "apolar/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "apolar/error.hpp"
#include "apolar/ideals.hpp"
#include "apolar/parallel.hpp"

namespace apolar {

namespace {

const Monomial& require_monomial(const Tensor& f, const char* what) {
  if (!f.is_monomial()) throw PreconditionError(std::string(what) + " needs a monomial tensor");
  return f.support_monomial();
}

std::vector<int> factor_exponents(const FactorShape& shape, const Monomial& m, std::size_t j) {
  return std::vector<int>(m.exponents().begin() + static_cast<long>(shape.offset(j)),
                          m.exponents().begin() + static_cast<long>(shape.offset(j + 1)));
}

// Number of exponent vectors e <= bound with |e| = d.
Integer bounded_compositions(const std::vector<int>& bound, int d) {
  if (d < 0) return 0;
  std::vector<Integer> ways(static_cast<std::size_t>(d) + 1, 0);
  ways[0] = 1;
  for (int b : bound) {
    std::vector<Integer> next(ways.size(), 0);
    for (int s = 0; s <= d; ++s) {
      if (ways[static_cast<std::size_t>(s)] == 0) continue;
      for (int e = 0; e <= b && s + e <= d; ++e) next[static_cast<std::size_t>(s + e)] += ways[static_cast<std::size_t>(s)];
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(d)];
}

// codim F-perp_D for a monomial F: the monomials of degree D dividing F.
Integer monomial_catalecticant_rank(const FactorShape& shape, const Monomial& m, const MultiDegree& d) {
  Integer out = 1;
  for (std::size_t j = 0; j < shape.factor_count(); ++j) out *= bounded_compositions(factor_exponents(shape, m, j), d[j]);
  return out;
}

Integer monomial_catalecticant_bound(const FactorShape& shape, const Monomial& m) {
  Integer best = 0;
  for (const auto& d : degrees_below(m.degree())) best = std::max(best, monomial_catalecticant_rank(shape, m, d));
  return best;
}

std::vector<std::size_t> candidate_bases(const FactorShape& shape) {
  std::vector<std::size_t> wide;
  for (std::size_t j = 0; j < shape.factor_count(); ++j)
    if (shape.factor_dim(j) != 1) wide.push_back(j);
  if (wide.size() > 1) throw UnsupportedShape("disjoint-module bound needs P^n x (P^1)^k");
  if (wide.size() == 1) return wide;
  std::vector<std::size_t> all(shape.factor_count());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return all;
}

}  // namespace

ChartBound upper_bound_monomial(const Tensor& f) {
  const Monomial& m = require_monomial(f, "upper_bound_monomial");
  const FactorShape& shape = f.shape();
  ChartBound out{1, {}};
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    std::size_t drop = shape.offset(j);
    for (std::size_t v = shape.offset(j); v < shape.offset(j + 1); ++v)
      if (m.exponent(v) > m.exponent(drop)) drop = v;
    out.dropped.push_back(drop);
    for (std::size_t v = shape.offset(j); v < shape.offset(j + 1); ++v)
      if (v != drop) out.value *= m.exponent(v) + 1;
  }
  return out;
}

Integer upper_bound_by_terms(const Tensor& f) {
  Integer total = 0;
  for (const auto& [m, c] : f.coefficients().terms()) {
    total += upper_bound_monomial(Tensor(f.degree(), Polynomial(f.shape(), m, 1))).value;
  }
  return total;
}

std::optional<bool> disjoint_module_rules_out(const Tensor& f, std::size_t base, int d, const Integer& r,
                                             DisjointModuleWitness* witness) {
  const Monomial& m = require_monomial(f, "disjoint_module_rules_out");
  const FactorShape& shape = f.shape();
  if (base >= shape.factor_count()) throw PreconditionError("base factor out of range");
  for (std::size_t j = 0; j < shape.factor_count(); ++j)
    if (j != base && shape.factor_dim(j) != 1) throw UnsupportedShape("disjoint-module bound needs P^n x (P^1)^k");
  const std::vector<int> a = factor_exponents(shape, m, base);
  const int n = shape.factor_dim(base);

  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (d - a[i] - 1 >= 0) present.push_back(i);
  for (std::size_t x = 0; x < present.size(); ++x)
    for (std::size_t y = x + 1; y < present.size(); ++y)
      if (a[present[x]] + a[present[y]] + 2 <= d) return std::nullopt;

  // D_Y: the smaller exponent on each line, so that G-perp vanishes there.
  MultiDegree degree = MultiDegree::zero(shape.factor_count());
  Integer multiplicity = 1;
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    if (j == base) continue;
    const auto e = factor_exponents(shape, m, j);
    degree[j] = *std::min_element(e.begin(), e.end());
    multiplicity *= degree[j] + 1;
  }
  degree[base] = d;
  MultiDegree next = degree;
  next[base] = d + 1;

  const Integer dim = piece_dimension(shape, degree);
  const Integer next_dim = piece_dimension(shape, next);
  const Integer cat = monomial_catalecticant_rank(shape, m, degree);
  const Integer next_cat = monomial_catalecticant_rank(shape, m, next);

  std::vector<int> dbar;
  Integer summands = 0;
  for (std::size_t i : present) {
    for (Integer k = 0; k < multiplicity; ++k) dbar.push_back(d - a[i] - 1);
    summands += multiplicity * single_piece_dimension(n, d - a[i] - 1);
  }
  std::sort(dbar.begin(), dbar.end());
  if (summands != dim - cat) throw std::logic_error("apolar piece is not the expected direct sum");

  // Monomials of F-perp at next that the summands times S_1 cannot reach:
  // those killed only by a generator first appearing in degree d + 1.
  Integer unreached = 0;
  for (const auto& e : enumerate_monomials(FactorShape::with_points({n}), MultiDegree({d + 1}))) {
    bool old_hit = false;
    bool new_hit = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (e.exponent(i) <= a[i]) continue;
      if (d - a[i] - 1 >= 0) old_hit = true;
      else new_hit = true;
    }
    if (new_hit && !old_hit) unreached += multiplicity;
  }

  const Integer c = std::min(r, dim) - cat;
  const Integer next_c = std::min(r, next_dim) - next_cat;
  if (c < 0) return false;
  LexBarProfile profile = lexbar_profile(dbar, n, c);
  const bool ruled_out = profile.growth + unreached < next_c;
  if (witness) {
    *witness = DisjointModuleWitness{base,     d,       degree,   next,       r,         dim,        dim - cat,
                                     next_dim, next_dim - next_cat, c, next_c, unreached, multiplicity, std::move(profile)};
  }
  return ruled_out;
}

DisjointModuleBound disjoint_module_lower_bound(const Tensor& f, int threads) {
  const Monomial& m = require_monomial(f, "disjoint_module_lower_bound");
  const FactorShape& shape = f.shape();
  const auto bases = candidate_bases(shape);
  const Integer upper = upper_bound_monomial(f).value;
  const Integer cat = monomial_catalecticant_bound(shape, m);

  struct Job {
    std::size_t base;
    int d;
  };
  std::vector<Job> jobs;
  for (std::size_t base : bases) {
    const auto a = factor_exponents(shape, m, base);
    // Past the smallest pairwise sum the summands overlap in every degree.
    int limit = 0;
    bool first = true;
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        const int s = a[x] + a[y] + 1;
        limit = first ? s : std::min(limit, s);
        first = false;
      }
    for (int d = 0; d <= limit; ++d) jobs.push_back({base, d});
  }

  std::vector<std::optional<Integer>> found(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (long k = 0; k < count; ++k) {
    const Job& job = jobs[static_cast<std::size_t>(k)];
    for (Integer r = upper - 1; r >= cat; --r) {
      const auto verdict = disjoint_module_rules_out(f, job.base, job.d, r);
      if (!verdict) break;
      if (*verdict) {
        found[static_cast<std::size_t>(k)] = r;
        break;
      }
    }
  }

  DisjointModuleBound out{cat, cat, std::nullopt};
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (found[k] && *found[k] + 1 > out.value) {
      out.value = *found[k] + 1;
      best = k;
    }
  }
  if (best) {
    DisjointModuleWitness w;
    disjoint_module_rules_out(f, jobs[*best].base, jobs[*best].d, *found[*best], &w);
    out.witness = std::move(w);
  }
  return out;
}

bool closed_form_supported(const FactorShape& shape) {
  if (shape.factor_count() == 1) return shape.factor_dim(0) == 1 || shape.factor_dim(0) == 2;
  std::size_t planes = 0;
  for (int a : shape.factors()) {
    if (a == 2) ++planes;
    else if (a != 1) return false;
  }
  return planes == 1;
}

Integer closed_form_border_rank(const Tensor& f) {
  require_monomial(f, "closed_form_border_rank");
  if (!closed_form_supported(f.shape()))
    throw UnsupportedShape("closed form is known only on P^1, P^2 and P^2 x (P^1)^k");
  return upper_bound_monomial(f).value;
}

std::optional<Integer> almost_unbalanced_check(const Tensor& f) {
  const Monomial& m = require_monomial(f, "almost_unbalanced_check");
  if (f.shape().factor_count() != 1) throw PreconditionError("almost_unbalanced_check needs a single factor");
  std::vector<int> a = m.exponents();
  std::sort(a.begin(), a.end(), std::greater<>());
  long rest = 0;
  Integer product = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    rest += a[i];
    product *= a[i] + 1;
  }
  if (a[0] >= rest - 1) return product;
  return std::nullopt;
}

std::string to_string(MinimalVerdict v) {
  return v == MinimalVerdict::NotMinimalBorderRank ? "not minimal border rank" : "necessary condition holds";
}

MinimalTestResult minimal_border_rank_generator_test(const Tensor& f) {
  const auto& factors = f.shape().factors();
  if (std::adjacent_find(factors.begin(), factors.end(), std::not_equal_to<>()) != factors.end())
    throw UnsupportedShape("generator test needs all factors of equal dimension");
  if (!is_concise(f)) throw PreconditionError("generator test needs a concise tensor");
  const Integer count = apolar_minimal_generator_count(f, f.degree());
  const Integer a = factors.front();
  return {count, a, count < a ? MinimalVerdict::NotMinimalBorderRank : MinimalVerdict::NecessaryConditionHolds};
}

MinimalTestResult minimal_border_rank_quotient_test(const Tensor& f, std::size_t factor) {
  const FactorShape& shape = f.shape();
  if (factor >= shape.factor_count()) throw PreconditionError("factor index out of range");
  const auto& factors = shape.factors();
  if (shape.factor_dim(factor) != *std::max_element(factors.begin(), factors.end()))
    throw PreconditionError("quotient test needs a factor of maximal dimension");
  if (!is_concise(f)) throw PreconditionError("quotient test needs a concise tensor");
  const MultiDegree below = f.degree() - MultiDegree::unit(shape.factor_count(), factor);
  const MonomialBasis top(shape, f.degree());
  const ApolarPiece piece = apolar_piece(f, below);
  RationalMatrix image(0, top.size());
  for (std::size_t r = 0; r < piece.kernel.rows(); ++r) {
    for (std::size_t v = shape.offset(factor); v < shape.offset(factor + 1); ++v) {
      const Monomial x = Monomial::variable(shape, v);
      std::vector<Rational> row(top.size());
      for (std::size_t c = 0; c < piece.basis.size(); ++c)
        if (piece.kernel(r, c) != 0) row[static_cast<std::size_t>(top.index_of(piece.basis[c] * x))] = piece.kernel(r, c);
      image.append_row(row);
    }
  }
  const Integer quotient = static_cast<unsigned long>(top.size() - rank(image));
  const Integer threshold = shape.factor_dim(factor) + 1;
  return {quotient, threshold,
          quotient < threshold ? MinimalVerdict::NotMinimalBorderRank : MinimalVerdict::NecessaryConditionHolds};
}

nlohmann::json bound_report(const Tensor& f, int threads) {
  using nlohmann::json;
  if (f.is_zero()) throw PreconditionError("bounds of the zero tensor");
  const FactorShape& shape = f.shape();
  json report{{"shape", shape_to_json(shape)}, {"degree", degree_to_json(f.degree())}, {"monomial", f.is_monomial()}};

  const CatalecticantBound cat = catalecticant_lower_bound(f, threads);
  report["catalecticant"] = {{"value", cat.value}, {"degree", degree_to_json(cat.degree)}};
  Integer lower = static_cast<unsigned long>(cat.value);
  std::string lower_tag = "catalecticant";
  Integer upper;
  std::string upper_tag;

  if (f.is_monomial()) {
    const ChartBound chart = upper_bound_monomial(f);
    json dropped = json::array();
    for (std::size_t v : chart.dropped) dropped.push_back(variable_name(shape, v));
    report["chart"] = {{"value", integer_to_json(chart.value)}, {"dropped", dropped}};
    upper = chart.value;
    upper_tag = "chart";

    try {
      const DisjointModuleBound dm = disjoint_module_lower_bound(f, threads);
      json entry{{"value", integer_to_json(dm.value)}};
      if (dm.witness) {
        const auto& w = *dm.witness;
        json codims = json::array();
        for (const auto& c : w.profile.codims) codims.push_back(integer_to_json(c));
        entry["witness"] = {{"base_factor", w.base_factor},
                            {"d", w.d},
                            {"degree", degree_to_json(w.degree)},
                            {"next_degree", degree_to_json(w.next_degree)},
                            {"ruled_out", integer_to_json(w.ruled_out)},
                            {"piece_dim", integer_to_json(w.piece_dim)},
                            {"apolar_dim", integer_to_json(w.apolar_dim)},
                            {"next_piece_dim", integer_to_json(w.next_piece_dim)},
                            {"next_apolar_dim", integer_to_json(w.next_apolar_dim)},
                            {"required_codim", integer_to_json(w.required_codim)},
                            {"next_required_codim", integer_to_json(w.next_required_codim)},
                            {"growth", integer_to_json(w.profile.growth)},
                            {"unreached", integer_to_json(w.unreached)},
                            {"multiplicity", integer_to_json(w.multiplicity)},
                            {"lexbar_degrees", w.profile.degrees},
                            {"lexbar_codims", codims}};
      } else {
        entry["witness"] = nullptr;
      }
      report["disjoint_module"] = entry;
      if (dm.value > lower) {
        lower = dm.value;
        lower_tag = "disjoint-module";
      }
    } catch (const UnsupportedShape& e) {
      report["disjoint_module"] = {{"skipped", e.what()}};
    }

    if (closed_form_supported(shape)) {
      const Integer exact = closed_form_border_rank(f);
      report["closed_form"] = integer_to_json(exact);
      lower = exact;
      lower_tag = "closed-form";
      upper = exact;
      upper_tag = "closed-form";
    } else {
      report["closed_form"] = nullptr;
    }
    if (shape.factor_count() == 1) {
      const auto au = almost_unbalanced_check(f);
      report["almost_unbalanced"] = au ? integer_to_json(*au) : json(nullptr);
      if (au && *au > lower) {
        lower = *au;
        lower_tag = "almost-unbalanced";
      }
    } else {
      report["almost_unbalanced"] = nullptr;
    }
  } else {
    report["chart"] = nullptr;
    report["disjoint_module"] = nullptr;
    report["closed_form"] = nullptr;
    report["almost_unbalanced"] = nullptr;
    upper = upper_bound_by_terms(f);
    upper_tag = "chart-sum";
  }

  report["lower"] = {{"value", integer_to_json(lower)}, {"provenance", lower_tag}};
  report["upper"] = {{"value", integer_to_json(upper)}, {"provenance", upper_tag}};
  report["exact"] = lower == upper ? integer_to_json(lower) : json(nullptr);
  return report;
}

}  // namespace apolar
