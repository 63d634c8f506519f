#include "apolar/ring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "apolar/error.hpp"

namespace apolar {

Integer binomial(long n, long k) {
  Integer result = 0;
  if (n < 0 || k < 0 || k > n) return result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

// ---------------------------------------------------------------------------
// FactorShape

FactorShape::FactorShape(std::vector<int> factors) : FactorShape(std::move(factors), Unchecked{}) {
  for (int a : factors_) {
    if (a < 1) throw PreconditionError("factor dimensions must be >= 1 (use with_points for P^0)");
  }
}

FactorShape FactorShape::with_points(std::vector<int> factors) {
  for (int a : factors) {
    if (a < 0) throw PreconditionError("factor dimensions must be non-negative");
  }
  return FactorShape(std::move(factors), Unchecked{});
}

FactorShape::FactorShape(std::vector<int> factors, Unchecked) : factors_(std::move(factors)) {
  if (factors_.empty()) throw PreconditionError("a shape needs at least one factor");
  offsets_.push_back(0);
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    offsets_.push_back(offsets_.back() + static_cast<std::size_t>(factors_[j]) + 1);
    for (int v = 0; v <= factors_[j]; ++v) factor_of_.push_back(j);
  }
}

// ---------------------------------------------------------------------------
// MultiDegree

bool MultiDegree::effective() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e >= 0; });
}

int MultiDegree::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiDegree::fits_in(const MultiDegree& other) const {
  if (other.size() != size()) throw DimensionMismatch("multidegree length mismatch");
  for (std::size_t j = 0; j < size(); ++j)
    if (entries_[j] > other.entries_[j]) return false;
  return true;
}

MultiDegree MultiDegree::unit(std::size_t w, std::size_t j) {
  std::vector<int> e(w, 0);
  e[j] = 1;
  return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  if (o.size() != size()) throw DimensionMismatch("multidegree length mismatch");
  std::vector<int> e(entries_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] += o.entries_[j];
  return MultiDegree(std::move(e));
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
  if (o.size() != size()) throw DimensionMismatch("multidegree length mismatch");
  std::vector<int> e(entries_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] -= o.entries_[j];
  return MultiDegree(std::move(e));
}

std::string MultiDegree::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(entries_[j]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const FactorShape& shape, std::vector<int> exponents) : exps_(std::move(exponents)) {
  if (exps_.size() != shape.variable_count())
    throw DimensionMismatch("monomial has " + std::to_string(exps_.size()) + " exponents, shape has " +
                            std::to_string(shape.variable_count()) + " variables");
  std::vector<int> deg(shape.factor_count(), 0);
  for (std::size_t v = 0; v < exps_.size(); ++v) {
    if (exps_[v] < 0) throw PreconditionError("negative exponent");
    deg[shape.factor_of(v)] += exps_[v];
  }
  degree_ = MultiDegree(std::move(deg));
}

Monomial Monomial::one(const FactorShape& shape) {
  return Monomial(shape, std::vector<int>(shape.variable_count(), 0));
}

Monomial Monomial::variable(const FactorShape& shape, std::size_t var) {
  std::vector<int> e(shape.variable_count(), 0);
  e.at(var) = 1;
  return Monomial(shape, std::move(e));
}

static void check_same(const Monomial& a, const Monomial& b) {
  if (a.variable_count() != b.variable_count() || a.degree().size() != b.degree().size())
    throw DimensionMismatch("monomials live in different rings");
}

bool Monomial::divides(const Monomial& other) const {
  check_same(*this, other);
  for (std::size_t v = 0; v < exps_.size(); ++v)
    if (exps_[v] > other.exps_[v]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  check_same(*this, other);
  std::vector<int> e(exps_);
  for (std::size_t v = 0; v < e.size(); ++v) e[v] += other.exps_[v];
  return Monomial(std::move(e), degree_ + other.degree_);
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  if (!divisor.divides(*this)) throw PreconditionError("quotient by a non-divisor");
  std::vector<int> e(exps_);
  for (std::size_t v = 0; v < e.size(); ++v) e[v] -= divisor.exps_[v];
  return Monomial(std::move(e), degree_ - divisor.degree_);
}

Monomial lcm(const FactorShape& shape, const Monomial& a, const Monomial& b) {
  check_same(a, b);
  std::vector<int> e(a.exponents());
  for (std::size_t v = 0; v < e.size(); ++v) e[v] = std::max(e[v], b.exponent(v));
  return Monomial(shape, std::move(e));
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering compare_grevlex(const Monomial& m1, const Monomial& m2) {
  check_same(m1, m2);
  const int t1 = m1.total_degree();
  const int t2 = m2.total_degree();
  if (t1 != t2) return t1 <=> t2;
  const auto& a = m1.exponents();
  const auto& b = m2.exponents();
  for (std::size_t v = a.size(); v-- > 0;) {
    if (a[v] != b[v]) return a[v] < b[v] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Graded pieces

void check_degree_length(const FactorShape& shape, const MultiDegree& degree) {
  if (degree.size() != shape.factor_count())
    throw DimensionMismatch("multidegree " + degree.to_string() + " has length " + std::to_string(degree.size()) +
                            ", shape has " + std::to_string(shape.factor_count()) + " factors");
}

Integer piece_dimension(const FactorShape& shape, const MultiDegree& degree) {
  check_degree_length(shape, degree);
  Integer dim = 1;
  for (std::size_t j = 0; j < degree.size(); ++j) {
    if (degree[j] < 0) return 0;
    dim *= binomial(shape.factor_dim(j) + degree[j], shape.factor_dim(j));
  }
  return dim;
}

namespace {

// Exponent vectors of total degree d in k variables.
void compositions(int k, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.push_back(e);
    compositions(k, d - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const FactorShape& shape, const MultiDegree& degree) {
  check_degree_length(shape, degree);
  if (!degree.effective()) throw PreconditionError("enumerate_monomials needs an effective degree");
  std::vector<std::vector<int>> partial{{}};
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    std::vector<std::vector<int>> block;
    std::vector<int> cur;
    compositions(shape.factor_dim(j) + 1, degree[j], cur, block);
    std::vector<std::vector<int>> next;
    next.reserve(partial.size() * block.size());
    for (const auto& p : partial) {
      for (const auto& b : block) {
        std::vector<int> e(p);
        e.insert(e.end(), b.begin(), b.end());
        next.push_back(std::move(e));
      }
    }
    partial = std::move(next);
  }
  std::vector<Monomial> out;
  out.reserve(partial.size());
  for (auto& e : partial) out.emplace_back(shape, std::move(e));
  std::sort(out.begin(), out.end(), GrevlexDescending{});
  return out;
}

std::vector<MultiDegree> degrees_up_to(std::size_t factor_count, int max_total) {
  std::vector<MultiDegree> out;
  for (int t = 0; t <= max_total; ++t) {
    std::vector<std::vector<int>> block;
    std::vector<int> cur;
    compositions(static_cast<int>(factor_count), t, cur, block);
    std::sort(block.begin(), block.end());
    for (auto& e : block) out.emplace_back(std::move(e));
  }
  return out;
}

MonomialBasis::MonomialBasis(const FactorShape& shape, const MultiDegree& degree)
    : degree_(degree), monomials_(degree.effective() ? enumerate_monomials(shape, degree) : std::vector<Monomial>{}) {
  check_degree_length(shape, degree);
  index_.reserve(monomials_.size());
  for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], k);
}

long MonomialBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

// ---------------------------------------------------------------------------
// Text and JSON formats

std::string format_monomial(const FactorShape& shape, const Monomial& m) {
  if (m.variable_count() != shape.variable_count()) throw DimensionMismatch("monomial does not fit shape");
  std::string s;
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    if (j) s += '|';
    const char letter = static_cast<char>('a' + j);
    bool any = false;
    for (std::size_t v = shape.offset(j); v < shape.offset(j + 1); ++v) {
      const int e = m.exponent(v);
      if (e == 0) continue;
      if (any) s += '*';
      any = true;
      s += letter;
      s += std::to_string(v - shape.offset(j));
      if (e > 1) {
        s += '^';
        s += std::to_string(e);
      }
    }
    if (!any) s += '1';
  }
  return s;
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("bad integer '" + std::string(text) + "' in monomial '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Monomial parse_monomial(const FactorShape& shape, std::string_view text) {
  std::vector<int> exps(shape.variable_count(), 0);
  std::size_t factor = 0;
  std::size_t start = 0;
  const std::string whole(text);
  while (true) {
    const std::size_t bar = text.find('|', start);
    std::string_view block = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    if (factor >= shape.factor_count()) throw ParseError("too many factor blocks in '" + whole + "'");
    if (block != "1") {
      std::size_t pos = 0;
      while (pos <= block.size()) {
        const std::size_t star = block.find('*', pos);
        std::string_view atom = block.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
        if (atom.size() < 2 || atom[0] != static_cast<char>('a' + factor))
          throw ParseError("bad variable '" + std::string(atom) + "' in factor " + std::to_string(factor) + " of '" +
                           whole + "'");
        const std::size_t caret = atom.find('^');
        const int idx = parse_int(atom.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1), text);
        const int e = caret == std::string_view::npos ? 1 : parse_int(atom.substr(caret + 1), text);
        if (idx < 0 || idx > shape.factor_dim(factor)) throw ParseError("variable index out of range in '" + whole + "'");
        exps[shape.offset(factor) + static_cast<std::size_t>(idx)] += e;
        if (star == std::string_view::npos) break;
        pos = star + 1;
      }
    }
    ++factor;
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (factor != shape.factor_count())
    throw ParseError("expected " + std::to_string(shape.factor_count()) + " factor blocks in '" + whole + "'");
  return Monomial(shape, std::move(exps));
}

nlohmann::json nested_exponents(const FactorShape& shape, const Monomial& m) {
  if (m.variable_count() != shape.variable_count()) throw DimensionMismatch("monomial does not fit shape");
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    nlohmann::json block = nlohmann::json::array();
    for (std::size_t v = shape.offset(j); v < shape.offset(j + 1); ++v) block.push_back(m.exponent(v));
    out.push_back(std::move(block));
  }
  return out;
}

Monomial monomial_from_nested(const FactorShape& shape, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != shape.factor_count()) throw ParseError("exponent array must have one block per factor");
  std::vector<int> exps;
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    const auto& block = j[f];
    if (!block.is_array() || block.size() != static_cast<std::size_t>(shape.factor_dim(f) + 1))
      throw ParseError("exponent block " + std::to_string(f) + " has the wrong length");
    for (const auto& e : block) {
      if (!e.is_number_integer() || e.get<long>() < 0) throw ParseError("exponents must be non-negative integers");
      exps.push_back(e.get<int>());
    }
  }
  return Monomial(shape, std::move(exps));
}

nlohmann::json monomial_to_json(const FactorShape& shape, const Monomial& m) {
  return nlohmann::json{{"exponents", nested_exponents(shape, m)}};
}

Monomial monomial_from_json(const FactorShape& shape, const nlohmann::json& j) {
  if (j.is_string()) return parse_monomial(shape, j.get<std::string>());
  if (!j.is_object() || !j.contains("exponents") || j.size() != 1) throw ParseError("monomial object needs exactly 'exponents'");
  return monomial_from_nested(shape, j.at("exponents"));
}

std::string variable_name(const FactorShape& shape, std::size_t var) {
  const std::size_t j = shape.factor_of(var);
  return std::string(1, static_cast<char>('a' + j)) + std::to_string(var - shape.offset(j));
}

nlohmann::json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

nlohmann::json shape_to_json(const FactorShape& shape) { return shape.factors(); }

FactorShape shape_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("shape must be a non-empty array");
  std::vector<int> f;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError("shape entries must be integers");
    f.push_back(e.get<int>());
  }
  try {
    return FactorShape::with_points(std::move(f));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json degree_to_json(const MultiDegree& d) { return d.entries(); }

MultiDegree degree_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("degree must be an array");
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("degree entries must be integers");
    e.push_back(x.get<int>());
  }
  return MultiDegree(std::move(e));
}

}  // namespace apolar
