#pragma once

#include "lerwkit/harmonic.hpp"
#include "lerwkit/lerw.hpp"

namespace lerwkit {

/// Excursion hitting matrix of a crossing configuration.
HittingMatrix crossing_matrix(const HarmonicSolver& solver, const CrossingConfig& cfg);

/// det[h_dA(x^j, y^l)] of the computed matrix. The solver must be built on
/// cfg.domain.
double fomin_det(const HarmonicSolver& solver, const CrossingConfig& cfg);
double fomin_det(const CrossingConfig& cfg);

/// det[h(x^j, y^l) / h(x^j, y^j)].
double conditional_det(const HittingMatrix& m);
double conditional_det(const HarmonicSolver& solver, const CrossingConfig& cfg);
double conditional_det(const CrossingConfig& cfg);

/// ((1 + eps)^k - 1) k^{k/2} sup_b^k: bound on |det[b(1 + d)] - det[b]| for
/// k x k matrices with |b| <= sup_b and |d| <= eps entrywise.
double det_perturbation_bound(int k, double eps, double sup_b);

}  // namespace lerwkit
