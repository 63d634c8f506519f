#include <doctest.h>

#include <random>

#include "apolar/apolarity.hpp"
#include "apolar/corpus.hpp"
#include "apolar/error.hpp"
#include "apolar/ideals.hpp"
#include "oracles.hpp"

using namespace apolar;

namespace {

MonomialIdeal mono_ideal(const FactorShape& s, std::initializer_list<const char*> gens) {
  std::vector<Monomial> g;
  for (const char* t : gens) g.push_back(parse_monomial(s, t));
  return MonomialIdeal(s, g);
}

std::vector<std::string> gen_names(const MonomialIdeal& ideal) {
  std::vector<std::string> out;
  for (const auto& g : ideal.generators()) out.push_back(format_monomial(ideal.shape(), g));
  std::sort(out.begin(), out.end());
  return out;
}

AnyIdeal corpus_ideal(const char* name) { return ideal_from_json(read_json_file(default_corpus_dir() / name)); }
Tensor corpus_tensor(const char* name) { return tensor_from_json(read_json_file(default_corpus_dir() / name)); }

MonomialIdeal random_monomial_ideal(std::mt19937& rng, const FactorShape& s, int max_total, int count) {
  std::vector<Monomial> pool;
  for (const auto& d : degrees_up_to(s.factor_count(), max_total))
    if (d.total() > 0)
      for (const auto& m : enumerate_monomials(s, d)) pool.push_back(m);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  MonomialIdeal out(s);
  for (int k = 0; k < count; ++k) out.add_generator(pool[pick(rng)]);
  return out;
}

// m lies in the saturation iff m * u is in I for every u of degree (k,...,k), k large.
bool in_saturation_oracle(const MonomialIdeal& ideal, const Monomial& m, int k) {
  const FactorShape& s = ideal.shape();
  for (const auto& u : oracle::exponent_vectors(s, MultiDegree(std::vector<int>(s.factor_count(), k)))) {
    std::vector<int> e = m.exponents();
    for (std::size_t v = 0; v < e.size(); ++v) e[v] += u[v];
    if (!ideal.contains(Monomial(s, e))) return false;
  }
  return true;
}

// Minimal generators of F-perp at D from the library's pieces, products and
// an independent rank.
std::size_t apolar_generators_oracle(const Tensor& f, const MultiDegree& d) {
  const FactorShape& s = f.shape();
  const ApolarPiece piece = apolar_piece(f, d);
  const auto target = oracle::exponent_vectors(s, d);
  std::vector<std::vector<Rational>> rows;
  for (std::size_t j = 0; j < s.factor_count(); ++j) {
    const MultiDegree lower = d - MultiDegree::unit(s.factor_count(), j);
    if (!lower.effective()) continue;
    const ApolarPiece low = apolar_piece(f, lower);
    for (std::size_t k = 0; k < low.dimension(); ++k) {
      const Polynomial p = from_coordinates(s, low.basis, low.kernel.row(k));
      for (std::size_t v = s.offset(j); v < s.offset(j) + s.factor_dim(j) + 1; ++v) {
        const Polynomial q = p * Monomial::variable(s, v);
        std::vector<Rational> row;
        for (const auto& e : target) row.push_back(q.coefficient(Monomial(s, e)));
        rows.push_back(row);
      }
    }
  }
  return piece.dimension() - oracle::rank(rows);
}

}  // namespace

TEST_CASE("monomial ideal minimalization") {
  const FactorShape s({2});
  MonomialIdeal i = mono_ideal(s, {"a0^2*a1", "a0^2", "a1^3", "a0^2"});
  CHECK(gen_names(i) == std::vector<std::string>{"a0^2", "a1^3"});
  i.add_generator(parse_monomial(s, "a0"));
  CHECK(gen_names(i) == std::vector<std::string>{"a0", "a1^3"});
  i.add_generator(parse_monomial(s, "a0*a2"));
  CHECK(gen_names(i) == std::vector<std::string>{"a0", "a1^3"});
  CHECK(i.contains(parse_monomial(s, "a0*a2^5")));
  CHECK_FALSE(i.contains(parse_monomial(s, "a1^2*a2^5")));
}

TEST_CASE("monomial pieces") {
  const FactorShape p3({3});
  CHECK(monomial_piece(mono_ideal(p3, {"a0^3", "a1^3", "a2^2", "a3^2"}), MultiDegree({3})).size() == 10);
  const FactorShape p1({1});
  const auto piece = monomial_piece(mono_ideal(p1, {"a0"}), MultiDegree({2}));
  REQUIRE(piece.size() == 2);
  CHECK(format_monomial(p1, piece[0]) == "a0^2");
  CHECK(format_monomial(p1, piece[1]) == "a0*a1");
  CHECK(monomial_piece(MonomialIdeal(p3), MultiDegree({4})).empty());
}

TEST_CASE("hilbert functions of the shipped ideals") {
  const AnyIdeal br3 = corpus_ideal("ideal-border-rank-3.json");
  CHECK(hilbert_function(br3, MultiDegree({1, 1, 1})).quotient_dim == 3);
  const AnyIdeal wild = corpus_ideal("ideal-wild-cubic.json");
  CHECK(hilbert_function(wild, MultiDegree({2})).quotient_dim == 5);
  const FactorShape s({2, 1});
  const HilbertValue zero = hilbert_function(MonomialIdeal(s), MultiDegree({2, 1}));
  CHECK(zero.ideal_dim == 0);
  CHECK(zero.quotient_dim == 12);
}

TEST_CASE("hilbert record sums to the piece dimension") {
  std::mt19937 rng(17);
  const FactorShape s({1, 2});
  for (int trial = 0; trial < 10; ++trial) {
    const MonomialIdeal m = random_monomial_ideal(rng, s, 3, 4);
    const AnyIdeal as_mono(m);
    const AnyIdeal as_graded(GradedIdeal::from_monomial(m));
    const HilbertRecord a = hilbert_record(as_mono, 5, 2);
    const HilbertRecord b = hilbert_record(as_graded, 5, 2);
    CHECK(a.size() == b.size());
    for (const auto& [d, v] : a) {
      CHECK(Integer(static_cast<unsigned long>(v.ideal_dim + v.quotient_dim)) == piece_dimension(s, d));
      CHECK(b.at(d).ideal_dim == v.ideal_dim);
    }
    const HilbertRecord serial = hilbert_record_serial(as_graded, 5);
    for (const auto& [d, v] : serial) CHECK(b.at(d).quotient_dim == v.quotient_dim);
  }
}

TEST_CASE("colon ideals") {
  const FactorShape s({2});
  CHECK(gen_names(colon(mono_ideal(s, {"a0^2"}), parse_monomial(s, "a0"))) == std::vector<std::string>{"a0"});
  CHECK(gen_names(colon(mono_ideal(s, {"a0^2", "a0*a1", "a0*a2"}), parse_monomial(s, "a0"))) ==
        std::vector<std::string>{"a0", "a1", "a2"});
  CHECK(gen_names(colon(mono_ideal(s, {"a1^3"}), parse_monomial(s, "a0"))) == std::vector<std::string>{"a1^3"});
}

TEST_CASE("colon agrees with divisibility") {
  std::mt19937 rng(23);
  const FactorShape s({2});
  for (int trial = 0; trial < 20; ++trial) {
    const MonomialIdeal i = random_monomial_ideal(rng, s, 4, 3);
    const Monomial m = enumerate_monomials(s, MultiDegree({2}))[trial % 6];
    const MonomialIdeal c = colon(i, m);
    for (int d = 0; d <= 4; ++d)
      for (const auto& u : enumerate_monomials(s, MultiDegree({d}))) CHECK(c.contains(u) == i.contains(u * m));
  }
}

TEST_CASE("saturation") {
  const FactorShape p2({2});
  CHECK(gen_names(saturate(mono_ideal(p2, {"a0^2", "a0*a1", "a0*a2"}))) == std::vector<std::string>{"a0"});
  CHECK(gen_names(saturate(mono_ideal(p2, {"a0"}))) == std::vector<std::string>{"a0"});
  const FactorShape p11({1, 1});
  CHECK(gen_names(saturate(mono_ideal(p11, {"a0|b0", "a0|b1"}))) == std::vector<std::string>{"a0|1"});
  CHECK(irrelevant_generators(p11).size() == 4);
}

TEST_CASE("saturation agrees with the brute-force definition") {
  std::mt19937 rng(29);
  for (const auto& s : {FactorShape({1, 1}), FactorShape({2}), FactorShape({1, 2})}) {
    for (int trial = 0; trial < 8; ++trial) {
      const MonomialIdeal i = random_monomial_ideal(rng, s, 3, 4);
      const MonomialIdeal sat = saturate(i);
      for (const auto& d : degrees_up_to(s.factor_count(), 3))
        for (const auto& m : enumerate_monomials(s, d)) CHECK(sat.contains(m) == in_saturation_oracle(i, m, 4));
    }
  }
}

TEST_CASE("saturation is idempotent and extensive") {
  std::mt19937 rng(31);
  for (const auto& s : {FactorShape({1, 1}), FactorShape({2}), FactorShape({1, 1, 1}), FactorShape({3})}) {
    for (int trial = 0; trial < 15; ++trial) {
      const MonomialIdeal i = random_monomial_ideal(rng, s, 4, 5);
      const MonomialIdeal sat = saturate(i);
      CHECK(saturate(sat) == sat);
      for (const auto& g : i.generators()) CHECK(sat.contains(g));
    }
  }
}

TEST_CASE("hilbert function of coordinate points stabilizes") {
  const FactorShape p2({2});
  const MonomialIdeal points = mono_ideal(p2, {"a0*a1", "a0*a2", "a1*a2"});
  CHECK(saturate(points) == points);
  for (int d = 1; d <= 6; ++d) CHECK(hilbert_function(points, MultiDegree({d})).quotient_dim == 3);
  const FactorShape p11({1, 1});
  const MonomialIdeal two = intersect(mono_ideal(p11, {"a1|1", "1|b0"}), mono_ideal(p11, {"a0|1", "1|b1"}));
  CHECK(saturate(two) == two);
  for (const auto& d : degrees_up_to(2, 6))
    if (d[0] > 0 && d[1] > 0) CHECK(hilbert_function(two, d).quotient_dim == 2);
}

TEST_CASE("graded pieces from generators") {
  const FactorShape p1({1});
  Polynomial g(p1);
  g.add_term(parse_monomial(p1, "a0"), 1);
  g.add_term(parse_monomial(p1, "a1"), -1);
  const GradedIdeal i(p1, {g});
  CHECK(graded_piece(i, MultiDegree({3})).dimension() == 3);
  CHECK(hilbert_function(i, MultiDegree({3})).quotient_dim == 1);
  Polynomial bad(p1);
  bad.add_term(parse_monomial(p1, "a0"), 1);
  bad.add_term(parse_monomial(p1, "a1^2"), 1);
  GradedIdeal j(p1);
  CHECK_THROWS_AS(j.add_generator(bad), PreconditionError);
  CHECK_THROWS_AS(j.add_generator(Polynomial(p1)), PreconditionError);
}

TEST_CASE("containment in apolar ideals") {
  CHECK(contained_in_apolar(corpus_ideal("ideal-border-rank-3.json"), corpus_tensor("tensor-border-rank-3.json")));
  CHECK(contained_in_apolar(corpus_ideal("ideal-wild-cubic.json"), corpus_tensor("tensor-wild-cubic.json")));
  const FactorShape p2({2});
  for (int d = 1; d <= 5; ++d)
    CHECK_FALSE(contained_in_apolar(AnyIdeal(mono_ideal(p2, {"a0"})), monomial_tensor(p2, {d, 0, 0})));
  CHECK(contained_in_apolar(AnyIdeal(mono_ideal(p2, {"a1", "a2"})), monomial_tensor(p2, {3, 0, 0})));
  CHECK(contained_in_apolar(AnyIdeal(mono_ideal(p2, {"a0^4"})), monomial_tensor(p2, {2, 1, 0})));
  CHECK_FALSE(contained_in_apolar(corpus_ideal("ideal-border-rank-3.json"),
                                  monomial_tensor(FactorShape({2, 2, 2}), {1, 0, 0, 1, 0, 0, 1, 0, 0})));
  CHECK_THROWS_AS(contained_in_apolar(AnyIdeal(mono_ideal(FactorShape({1}), {"a0"})), monomial_tensor(p2, {1, 0, 0})),
                  DimensionMismatch);
}

TEST_CASE("containment in degree L agrees with every degree") {
  std::mt19937 rng(37);
  for (const auto& [s, l] : {std::pair{FactorShape({2}), MultiDegree({3})}, std::pair{FactorShape({1, 1}), MultiDegree({2, 2})}}) {
    for (int trial = 0; trial < 25; ++trial) {
      const Tensor f = oracle::random_tensor(rng, s, l, trial % 2 ? 1 : 3);
      const MonomialIdeal m = random_monomial_ideal(rng, s, 3, 2);
      CHECK(contained_in_apolar(AnyIdeal(m), f) == contained_in_apolar_all_degrees(AnyIdeal(m), f));
      const GradedIdeal g = GradedIdeal::from_monomial(m);
      CHECK(contained_in_apolar(AnyIdeal(g), f) == contained_in_apolar_all_degrees(AnyIdeal(g), f));
    }
    // Ideals built from apolar pieces are contained by construction.
    const Tensor f = oracle::random_tensor(rng, s, l, 3);
    GradedIdeal perp(s);
    for (const auto& d : degrees_below(l)) {
      const ApolarPiece piece = apolar_piece(f, d);
      for (std::size_t k = 0; k < piece.dimension(); ++k) perp.add_generator(from_coordinates(s, piece.basis, piece.kernel.row(k)));
    }
    CHECK(contained_in_apolar(AnyIdeal(perp), f));
    CHECK(contained_in_apolar_all_degrees(AnyIdeal(perp), f));
  }
}

TEST_CASE("minimal generator counts") {
  const FactorShape p3({3});
  CHECK(apolar_minimal_generator_count(monomial_tensor(p3, {2, 2, 1, 1}), MultiDegree({2})) == 2);
  CHECK(apolar_minimal_generator_count(monomial_tensor(p3, {2, 2, 1, 1}), MultiDegree({3})) == 2);
  const AnyIdeal br3 = corpus_ideal("ideal-border-rank-3.json");
  const auto& g = std::get<GradedIdeal>(br3);
  CHECK(minimal_generator_count(g, MultiDegree({1, 1, 0})) == 6);
  CHECK(minimal_generator_count(g, MultiDegree({0, 2, 0})) == 3);
  CHECK(minimal_generator_count(g, MultiDegree({3, 0, 0})) == 1);
  CHECK(minimal_generator_count(g, MultiDegree({1, 1, 1})) == 0);

  const FactorShape p111({1, 1, 1});
  Polynomial diag(p111);
  diag.add_term(parse_monomial(p111, "a0|b0|c0"), 1);
  diag.add_term(parse_monomial(p111, "a1|b1|c1"), 1);
  const Tensor f(MultiDegree({1, 1, 1}), diag);
  const std::size_t count = apolar_minimal_generator_count(f, MultiDegree({1, 1, 1}));
  CHECK(count >= 1);
  CHECK(count == apolar_generators_oracle(f, MultiDegree({1, 1, 1})));

  std::mt19937 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const Tensor r = oracle::random_tensor(rng, FactorShape({1, 2}), MultiDegree({2, 2}), 4);
    for (const auto& d : degrees_below(r.degree())) CHECK(apolar_minimal_generator_count(r, d) == apolar_generators_oracle(r, d));
  }
}

TEST_CASE("ideal json") {
  for (const char* name : {"ideal-border-rank-3.json", "ideal-wild-cubic.json", "ideal-tangent.json"}) {
    const auto j = read_json_file(default_corpus_dir() / name);
    const AnyIdeal i = ideal_from_json(j);
    CHECK(ideal_to_json(ideal_from_json(ideal_to_json(i))) == ideal_to_json(i));
  }
  CHECK_THROWS_AS(ideal_from_json(nlohmann::json::parse(R"({"shape":[1],"monomial_generators":["a0"],"x":0})")), ParseError);
  CHECK_THROWS_AS(ideal_from_json(nlohmann::json::parse(R"({"shape":[1]})")), ParseError);
  CHECK_THROWS_AS(
      ideal_from_json(nlohmann::json::parse(
          R"({"shape":[1],"generators":[{"degree":[2],"terms":[{"exp":[[1,0]],"num":"1"}]}]})")),
      ParseError);
}
