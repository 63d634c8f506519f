#pragma once

#include <vector>

#include "apolar/ring.hpp"

namespace apolar {

/// A monomial ideal given by its minimal generators. Generators are kept
/// minimal (no generator divides another) and sorted in descending grevlex.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(FactorShape shape) : shape_(std::move(shape)) {}
  MonomialIdeal(FactorShape shape, std::vector<Monomial> generators);

  const FactorShape& shape() const { return shape_; }
  const std::vector<Monomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

  bool contains(const Monomial& m) const;
  void add_generator(const Monomial& m);

  bool operator==(const MonomialIdeal& o) const { return shape_ == o.shape_ && generators_ == o.generators_; }

 private:
  void minimalize();

  FactorShape shape_;
  std::vector<Monomial> generators_;
};

}  // namespace apolar
