#include "apolar/macaulay.hpp"

#include <algorithm>
#include <limits>

#include "apolar/error.hpp"

namespace apolar {

Integer single_piece_dimension(int n, int d) { return d < 0 ? Integer(0) : binomial(n + d, n); }

MacaulayDecomposition macaulay_coefficients(const Integer& r, int d) {
  if (r < 0) throw PreconditionError("Macaulay decomposition of a negative number");
  if (d < 1) throw PreconditionError("Macaulay decomposition needs d >= 1");
  MacaulayDecomposition out{r, d, {}};
  Integer rest = r;
  for (int i = d; i >= 1; --i) {
    // largest a with binomial(a, i) <= rest: doubling, then bisection
    long lo = i - 1, step = 1;
    while (binomial(lo + step, i) <= rest) {
      lo += step;
      if (step > std::numeric_limits<long>::max() / 4) throw PreconditionError("Macaulay coefficient exceeds 64 bits");
      step *= 2;
    }
    long hi = lo + step;  // binomial(hi, i) > rest
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (binomial(mid, i) <= rest ? lo : hi) = mid;
    }
    const long a = lo;
    rest -= binomial(a, i);
    out.coefficients.push_back(a);
  }
  return out;
}

Integer macaulay_exponent(const Integer& r, int d) {
  const MacaulayDecomposition dec = macaulay_coefficients(r, d);
  Integer out = 0;
  for (std::size_t k = 0; k < dec.coefficients.size(); ++k) {
    const long i = d - static_cast<long>(k);
    out += binomial(dec.coefficients[k] + 1, i + 1);
  }
  return out;
}

std::vector<Monomial> lex_segment(int n, int d, const Integer& r) {
  if (d < 0) throw PreconditionError("lex_segment needs d >= 0");
  const FactorShape shape = FactorShape::with_points({n});
  auto monomials = enumerate_monomials(shape, MultiDegree({d}));
  if (r < 0 || r > static_cast<unsigned long>(monomials.size()))
    throw PreconditionError("lex_segment codimension " + r.get_str() + " outside [0, " + std::to_string(monomials.size()) +
                            "]");
  monomials.erase(monomials.begin(), monomials.begin() + static_cast<long>(r.get_ui()));
  return monomials;
}

LexBarProfile lexbar_profile(const std::vector<int>& degrees, int n, const Integer& r) {
  if (!std::is_sorted(degrees.begin(), degrees.end())) throw PreconditionError("Lex-bar degrees must be ascending");
  Integer capacity = 0;
  for (int d : degrees) {
    if (d < 0) throw PreconditionError("Lex-bar degrees must be non-negative");
    capacity += single_piece_dimension(n, d);
  }
  if (r < 0 || r > capacity)
    throw PreconditionError("Lex-bar codimension " + r.get_str() + " outside [0, " + capacity.get_str() + "]");
  LexBarProfile out{degrees, n, {}, 0};
  Integer rest = r;
  for (int d : degrees) {
    const Integer dim = single_piece_dimension(n, d);
    const Integer c = std::min<Integer>(rest, dim);
    rest -= c;
    out.codims.push_back(c);
    if (c == dim) {
      out.growth += single_piece_dimension(n, d + 1);
    } else if (c > 0) {
      out.growth += macaulay_exponent(c, d);
    }
  }
  return out;
}

Integer lexbar_growth(const std::vector<int>& degrees, int n, const Integer& r) {
  return lexbar_profile(degrees, n, r).growth;
}

}  // namespace apolar
