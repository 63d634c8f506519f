#include "apolar/polynomial.hpp"

#include "apolar/error.hpp"

namespace apolar {

Polynomial::Polynomial(FactorShape shape, const Monomial& m, Rational c) : shape_(std::move(shape)) {
  add_term(m, c);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.variable_count() != shape_.variable_count()) throw DimensionMismatch("term does not fit the polynomial's shape");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<MultiDegree> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const MultiDegree& d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

Polynomial Polynomial::operator*(const Monomial& m) const {
  Polynomial out(shape_);
  for (const auto& [t, c] : terms_) out.terms_.emplace(t * m, c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (!(shape_ == other.shape_)) throw DimensionMismatch("product of polynomials over different shapes");
  Polynomial out(shape_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) out.add_term(a * b, ca * cb);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (!(shape_ == other.shape_)) throw DimensionMismatch("sum of polynomials over different shapes");
  Polynomial out(*this);
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(shape_);
  if (sgn(c) == 0) return out;
  for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
  return out;
}

std::vector<Rational> coordinates(const Polynomial& p, const MonomialBasis& basis) {
  std::vector<Rational> v(basis.size());
  for (const auto& [m, c] : p.terms()) {
    const long k = basis.index_of(m);
    if (k < 0) throw PreconditionError("polynomial term outside the graded piece " + basis.degree().to_string());
    v[static_cast<std::size_t>(k)] = c;
  }
  return v;
}

Polynomial from_coordinates(const FactorShape& shape, const MonomialBasis& basis, const std::vector<Rational>& v) {
  if (v.size() != basis.size()) throw DimensionMismatch("coordinate vector does not match basis");
  Polynomial p(shape);
  for (std::size_t k = 0; k < v.size(); ++k) p.add_term(basis[k], v[k]);
  return p;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_strings(const std::string& num, const std::string& den) {
  Integer n, d;
  if (num.empty() || n.set_str(num, 10) != 0) throw ParseError("bad numerator '" + num + "'");
  if (den.empty() || d.set_str(den, 10) != 0) throw ParseError("bad denominator '" + den + "'");
  if (d == 0) throw ParseError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

nlohmann::json terms_to_json(const Polynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    out.push_back({{"exp", nested_exponents(p.shape(), m)},
                   {"num", c.get_num().get_str()},
                   {"den", c.get_den().get_str()}});
  }
  return out;
}

Polynomial terms_from_json(const FactorShape& shape, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("terms must be an array");
  Polynomial p(shape);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("num")) throw ParseError("each term needs 'exp' and 'num'");
    for (const auto& [key, value] : t.items()) {
      if (key != "exp" && key != "num" && key != "den") throw ParseError("unknown term field '" + key + "'");
    }
    const Monomial m = monomial_from_nested(shape, t.at("exp"));
    if (!t.at("num").is_string() || (t.contains("den") && !t.at("den").is_string()))
      throw ParseError("'num' and 'den' must be integer strings");
    const std::string den = t.contains("den") ? t.at("den").get<std::string>() : "1";
    p.add_term(m, rational_from_strings(t.at("num").get<std::string>(), den));
  }
  return p;
}

}  // namespace apolar
