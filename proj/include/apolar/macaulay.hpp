#pragma once

// Macaulay's bound on Hilbert-function growth for a single projective space
// and its Lex-bar extension to direct sums of graded pieces.

#include <vector>

#include "apolar/ring.hpp"

namespace apolar {

/// r = sum_{i=1..d} C(a_i, i) with a_d > a_{d-1} > ... > a_1 >= 0.
struct MacaulayDecomposition {
  Integer r;
  int d = 1;
  std::vector<long> coefficients;  // a_d first, a_1 last
};

MacaulayDecomposition macaulay_coefficients(const Integer& r, int d);

/// r^<d> = sum_i C(a_i + 1, i + 1).
Integer macaulay_exponent(const Integer& r, int d);

/// The last dim S_d - r monomials of S_d in grevlex on n+1 variables.
std::vector<Monomial> lex_segment(int n, int d, const Integer& r);

/// Codimensions of the Lex-bar subspace summand by summand: the smallest
/// degrees are emptied first.
struct LexBarProfile {
  std::vector<int> degrees;
  int n = 1;
  std::vector<Integer> codims;
  Integer growth;  // codim of Lexbar * S_1 in the sum of S_{d_i + 1}
};

LexBarProfile lexbar_profile(const std::vector<int>& degrees, int n, const Integer& r);

/// Maximal codimension growth of a codimension-r subspace of the sum of S_{d_i}.
Integer lexbar_growth(const std::vector<int>& degrees, int n, const Integer& r);

/// dim S_d on n+1 variables.
Integer single_piece_dimension(int n, int d);

}  // namespace apolar
