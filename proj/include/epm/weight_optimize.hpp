#pragma once

#include <vector>

#include "epm/weights.hpp"

namespace epm {

// Truncation-error objective
//   F(w) = [ int (w + 2|w'|) ] / [ int |x|^2 |w| ]
// over R^d; the angular factors cancel, leaving radial integrals. Requires a
// C^1 kernel (MPS is rejected).
double objective_F(const ReferenceWeight& w, int d);

// F evaluated on raw polynomial coefficients (used by the optimizer and by
// grid-search oracles in tests). Returns +inf when w is not positive on (0,1).
double objective_F_poly(const std::vector<double>& coeffs, int d);

// Minimize F over degree-n polynomials subject to a_0 > 0, sum a_k = 0,
// sum k a_k = 0 (value and slope vanish at the support edge). The scale gauge
// a_0 = 1 removes F's scale invariance; constraints are eliminated exactly,
// and positivity on (0,1) acts as a feasibility filter. n = 2 has no free
// coefficients and yields the spike function.
std::vector<double> optimize_polynomial(int n, int d);

// Fill a_1, a_2 from the free tail a_3..a_n under the edge constraints with
// a_0 = 1. free may be empty (n = 2).
std::vector<double> polynomial_from_free(const std::vector<double>& free_tail);

}  // namespace epm
