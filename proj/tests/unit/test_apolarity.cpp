#include <doctest.h>

#include <random>

#include "apolar/apolarity.hpp"
#include "apolar/corpus.hpp"
#include "apolar/error.hpp"
#include "apolar/ideals.hpp"
#include "apolar/linalg.hpp"
#include "oracles.hpp"

using namespace apolar;

namespace {

Polynomial poly(const FactorShape& s, std::initializer_list<std::pair<const char*, long>> terms) {
  Polynomial p(s);
  for (const auto& [text, c] : terms) p.add_term(parse_monomial(s, text), c);
  return p;
}

Tensor tensor(const FactorShape& s, std::initializer_list<std::pair<const char*, long>> terms) {
  const Polynomial p = poly(s, terms);
  return Tensor(*p.homogeneous_degree(), p);
}

Tensor diagonal_p1_cubed() {
  return tensor(FactorShape({1, 1, 1}), {{"a0|b0|c0", 1}, {"a1|b1|c1", 1}});
}

Tensor wild_cubic() { return tensor_from_json(read_json_file(default_corpus_dir() / "tensor-wild-cubic.json")); }

}  // namespace

TEST_CASE("hook on monomials") {
  const FactorShape s({2});
  auto m = [&](const char* t) { return parse_monomial(s, t); };
  CHECK(hook(m("a0"), m("a0^4")) == m("a0^3"));
  CHECK_FALSE(hook(m("a1^2"), m("a0^2*a1")).has_value());
  CHECK(hook(m("a0*a1"), m("a0^2*a1^2")) == m("a0*a1"));
}

TEST_CASE("hook on tensors") {
  const FactorShape p3({3});
  const Tensor f = monomial_tensor(p3, {2, 2, 1, 1});
  CHECK(hook_tensor(poly(p3, {{"1", 1}}), f) == f);
  CHECK(hook_tensor(poly(p3, {{"a0^3", 1}}), f).is_zero());

  const FactorShape p1({1});
  const Tensor g = tensor(p1, {{"a0^2", 1}, {"a1^2", 1}});
  CHECK(hook_tensor(poly(p1, {{"a0", 1}, {"a1", 1}}), g) == tensor(p1, {{"a0", 1}, {"a1", 1}}));

  CHECK_THROWS_AS(hook_tensor(poly(p1, {{"a0", 1}, {"a1^2", 1}}), g), PreconditionError);
  CHECK_THROWS_AS(hook_tensor(poly(p1, {{"a0^3", 1}}), g), PreconditionError);
}

TEST_CASE("hook action is associative") {
  std::mt19937 rng(11);
  const FactorShape shape({2, 1});
  const MultiDegree l({3, 2});
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor f = oracle::random_tensor(rng, shape, l, 6);
    const Tensor t1 = oracle::random_tensor(rng, shape, MultiDegree({1, 1}), 3);
    const Tensor t2 = oracle::random_tensor(rng, shape, MultiDegree({1, 0}), 2);
    const Polynomial& th1 = t1.coefficients();
    const Polynomial& th2 = t2.coefficients();
    const Tensor lhs = hook_tensor(th1 * th2, f);
    const Tensor inner = hook_tensor(th2, f);
    if (inner.is_zero()) {
      CHECK(lhs.is_zero());
      continue;
    }
    CHECK(lhs == hook_tensor(th1, inner));
  }
}

TEST_CASE("apolar pieces") {
  const FactorShape p3({3});
  CHECK(apolar_piece(monomial_tensor(p3, {2, 2, 1, 1}), MultiDegree({3})).dimension() == 10);
  CHECK(apolar_piece(wild_cubic(), MultiDegree({2})).dimension() == 10);

  const Tensor power = monomial_tensor(p3, {5, 0, 0, 0});
  const ApolarPiece linear = apolar_piece(power, MultiDegree({1}));
  CHECK(linear.dimension() == 3);
  for (std::size_t k = 0; k < linear.dimension(); ++k) {
    const Polynomial p = from_coordinates(p3, linear.basis, linear.kernel.row(k));
    CHECK(p.coefficient(parse_monomial(p3, "a0")) == 0);
  }
  CHECK(apolar_piece(power, MultiDegree({6})).dimension() == 84);
}

TEST_CASE("apolar ideal of a monomial") {
  auto gens = [](const Tensor& f) {
    std::vector<std::string> out;
    const MonomialIdeal ideal = apolar_of_monomial(f);
    for (const auto& g : ideal.generators()) out.push_back(format_monomial(f.shape(), g));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(gens(monomial_tensor(FactorShape({2}), {2, 2, 2})) == std::vector<std::string>{"a0^3", "a1^3", "a2^3"});
  CHECK(gens(monomial_tensor(FactorShape({3}), {2, 2, 1, 1})) ==
        std::vector<std::string>{"a0^3", "a1^3", "a2^2", "a3^2"});
  CHECK(gens(monomial_tensor(FactorShape({1}), {1, 0})) == std::vector<std::string>{"a0^2", "a1"});
  CHECK_THROWS_AS(apolar_of_monomial(diagonal_p1_cubed()), PreconditionError);
}

TEST_CASE("conciseness") {
  CHECK(is_concise(monomial_tensor(FactorShape({3}), {2, 2, 1, 1})));
  CHECK_FALSE(is_concise(monomial_tensor(FactorShape({2}), {3, 0, 0})));
  CHECK(is_concise(diagonal_p1_cubed()));
  const Tensor f = diagonal_p1_cubed();
  for (std::size_t j = 0; j < 3; ++j) CHECK(oracle::catalecticant_rank(f, MultiDegree::unit(3, j)) == 2);
}

TEST_CASE("catalecticant lower bound") {
  CHECK(catalecticant_lower_bound(monomial_tensor(FactorShape({3}), {4, 4, 4, 3})).value == 70);
  for (int d = 2; d <= 7; ++d) {
    CHECK(catalecticant_lower_bound(monomial_tensor(FactorShape({3}), {d - 1, 1, 0, 0})).value == 2);
    CHECK(catalecticant_lower_bound(monomial_tensor(FactorShape({2}), {d, 0, 0})).value == 1);
  }
  CHECK_THROWS_AS(catalecticant_lower_bound(Tensor(FactorShape({1}), MultiDegree({2}))), PreconditionError);
}

TEST_CASE("catalecticant ranks match an independent elimination") {
  std::mt19937 rng(5);
  for (const auto& [shape, l] : {std::pair{FactorShape({2}), MultiDegree({4})}, std::pair{FactorShape({1, 1}), MultiDegree({2, 3})},
                                 std::pair{FactorShape({2, 1}), MultiDegree({2, 2})}}) {
    for (int trial = 0; trial < 8; ++trial) {
      const Tensor f = oracle::random_tensor(rng, shape, l, 5);
      const auto degrees = degrees_below(l);
      const auto ranks = catalecticant_ranks(f, 2);
      CHECK(ranks == catalecticant_ranks_serial(f));
      for (std::size_t k = 0; k < degrees.size(); ++k) {
        CHECK(ranks[k] == oracle::catalecticant_rank(f, degrees[k]));
        CHECK(ranks[k] + apolar_piece(f, degrees[k]).dimension() ==
              piece_dimension(shape, degrees[k]).get_ui());
      }
    }
  }
}

TEST_CASE("catalecticant symmetry") {
  std::mt19937 rng(3);
  for (const auto& [shape, l] : {std::pair{FactorShape({2}), MultiDegree({5})}, std::pair{FactorShape({1, 2}), MultiDegree({2, 3})},
                                 std::pair{FactorShape({1, 1, 1}), MultiDegree({1, 2, 2})}}) {
    for (int trial = 0; trial < 6; ++trial) {
      const Tensor f = oracle::random_tensor(rng, shape, l, 7);
      for (const auto& d : degrees_below(l)) {
        CHECK(catalecticant_rank(f, d) == catalecticant_rank(f, l - d));
        const Catalecticant c = catalecticant(f, d);
        CHECK(c.matrix.transposed().rows() == catalecticant(f, l - d).matrix.rows());
      }
    }
  }
}

TEST_CASE("monomial apolar pieces agree with the monomial ideal") {
  for (const auto& exps : std::vector<std::vector<int>>{{2, 1, 0}, {2, 2, 1}, {3, 1, 1}}) {
    const FactorShape s({2});
    const Tensor f = monomial_tensor(s, exps);
    const MonomialIdeal ideal = apolar_of_monomial(f);
    for (int d = 0; d <= f.degree().total(); ++d) {
      const MultiDegree deg({d});
      const ApolarPiece piece = apolar_piece(f, deg);
      const auto monos = monomial_piece(ideal, deg);
      CHECK(piece.dimension() == monos.size());
      RationalMatrix both = piece.kernel;
      for (const auto& m : monos) {
        std::vector<Rational> row(piece.basis.size());
        row[piece.basis.index_of(m)] = 1;
        both.append_row(row);
      }
      CHECK(rank(both) == piece.dimension());
    }
  }
}

TEST_CASE("monomial catalecticant counts bounded exponents") {
  for (const auto& [shape, exps] : {std::pair{FactorShape({2}), std::vector<int>{3, 2, 1}},
                                    std::pair{FactorShape({1, 1}), std::vector<int>{2, 1, 1, 3}},
                                    std::pair{FactorShape({3}), std::vector<int>{2, 2, 1, 1}}}) {
    const Tensor f = monomial_tensor(shape, exps);
    for (const auto& d : degrees_below(f.degree())) {
      std::size_t count = 0;
      for (const auto& e : oracle::exponent_vectors(shape, d)) {
        bool fits = true;
        for (std::size_t v = 0; v < e.size(); ++v) fits = fits && e[v] <= exps[v];
        count += fits;
      }
      CHECK(catalecticant_rank(f, d) == count);
    }
  }
}

TEST_CASE("tensor json") {
  const FactorShape s({1, 2});
  Polynomial p(s);
  p.add_term(parse_monomial(s, "a0^2|b1"), Rational(3, 4));
  p.add_term(parse_monomial(s, "a0*a1|b2"), -5);
  const Tensor f(MultiDegree({2, 1}), p);
  CHECK(tensor_from_json(tensor_to_json(f)) == f);
  CHECK(tensor_from_json(tensor_to_json(f, Convention::Plain)) == f);
  CHECK(tensor_to_json(tensor_from_json(tensor_to_json(f))) == tensor_to_json(f));

  const auto plain = nlohmann::json::parse(
      R"({"shape":[1],"degree":[3],"convention":"plain","terms":[{"exp":[[2,1]],"num":"1"}]})");
  CHECK(tensor_from_json(plain).coefficients().coefficient(parse_monomial(FactorShape({1}), "a0^2*a1")) == 2);

  CHECK_THROWS_AS(tensor_from_json(nlohmann::json::parse(R"({"shape":[1],"degree":[1],"terms":[],"x":1})")), ParseError);
  CHECK_THROWS_AS(tensor_from_json(nlohmann::json::parse(R"({"shape":[1],"degree":[2],"terms":[{"exp":[[1,0]],"num":"1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(
      tensor_from_json(nlohmann::json::parse(R"({"shape":[1],"degree":[1],"terms":[{"exp":[[1,0]],"num":"1","den":"0"}]})")),
      ParseError);
}

TEST_CASE("rational linear algebra") {
  RationalMatrix m(3, 4);
  const int vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = vals[i][j];
  CHECK(rank(m) == 2);
  const RationalMatrix ker = null_space(m);
  CHECK(ker.rows() == 2);
  for (std::size_t k = 0; k < ker.rows(); ++k)
    for (int i = 0; i < 3; ++i) {
      Rational s = 0;
      for (int j = 0; j < 4; ++j) s += m(i, j) * ker(k, j);
      CHECK(s == 0);
    }
  const RationalMatrix left = left_null_space(m);
  CHECK(left.rows() == 1);
  for (int j = 0; j < 4; ++j) {
    Rational s = 0;
    for (int i = 0; i < 3; ++i) s += left(0, i) * m(i, j);
    CHECK(s == 0);
  }
  const Echelon e = row_reduce(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.reduced(0, 0) == 1);
  CHECK(e.reduced(0, 1) == 0);

  std::mt19937 rng(9);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    RationalMatrix r(5, 6);
    std::vector<std::vector<Rational>> copy(5, std::vector<Rational>(6));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 6; ++j) copy[i][j] = r(i, j) = Rational(dist(rng), 1 + (trial % 3));
    CHECK(rank(r) == oracle::rank(copy));
    CHECK(rank(r) + null_space(r).rows() == 6);
  }
}
