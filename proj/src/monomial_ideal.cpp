#include "apolar/monomial_ideal.hpp"

#include <algorithm>

#include "apolar/error.hpp"

namespace apolar {

MonomialIdeal::MonomialIdeal(FactorShape shape, std::vector<Monomial> generators)
    : shape_(std::move(shape)), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.variable_count() != shape_.variable_count()) throw DimensionMismatch("generator lives in a different ring");
  }
  minimalize();
}

bool MonomialIdeal::contains(const Monomial& m) const {
  return std::any_of(generators_.begin(), generators_.end(), [&](const Monomial& g) { return g.divides(m); });
}

void MonomialIdeal::add_generator(const Monomial& m) {
  if (m.variable_count() != shape_.variable_count()) throw DimensionMismatch("generator lives in a different ring");
  if (contains(m)) return;
  generators_.push_back(m);
  minimalize();
}

void MonomialIdeal::minimalize() {
  std::sort(generators_.begin(), generators_.end(), [](const Monomial& a, const Monomial& b) {
    return compare_grevlex(a, b) == std::strong_ordering::less;
  });
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  // Ascending grevlex puts every divisor before its multiples.
  std::vector<Monomial> kept;
  for (const auto& g : generators_) {
    if (std::none_of(kept.begin(), kept.end(), [&](const Monomial& k) { return k.divides(g); })) kept.push_back(g);
  }
  std::reverse(kept.begin(), kept.end());
  generators_ = std::move(kept);
}

}  // namespace apolar
