#pragma once

#include <cstddef>
#include <vector>

#include "sensing.hpp"

namespace csaudio {

struct SolverConfig {
  std::size_t max_iters = 5000;
  double residual_tol = 1e-6;  // relative feasibility tolerance on ||Omega x - y|| / ||y||
  double change_tol = 1e-8;    // relative iterate-change tolerance
  double admm_rho = 1.0;       // penalty; the shrinkage threshold is 1/rho
};

struct Reconstruction {
  CoefficientVector coeffs;
  Frame frame;
  std::size_t iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  double discarded_imag_energy = 0.0;  // DFT only, else 0
  // ||x - z|| per iteration, for divergence diagnostics.
  std::vector<double> primal_residual_history;
};

// Sum of absolute values (complex modulus for DFT coefficients).
double l1_norm(const CoefficientVector& coeffs);

// Equality-constrained basis pursuit, min ||x||_1 s.t. Omega x = y, solved
// by ADMM. The x-step projects onto the affine feasible set; because the
// operator has orthonormal rows the projection is exact and costs one
// apply plus one adjoint. The z-step is elementwise soft-thresholding
// (modulus shrinkage in the complex case), the u-step is dual ascent.
// Returns the sparse iterate z. Non-convergence is reported via the
// converged flag, never thrown.
Reconstruction solve_bp(const MeasurementSet& measurements, const SolverConfig& config = {});

// Orthogonal matching pursuit over the same operator: greedy column
// selection by correlation magnitude (ties broken toward the lowest
// index) with a least-squares refit on the active set each step. Serves
// as an independent cross-check on solve_bp.
Reconstruction solve_omp(const MeasurementSet& measurements, std::size_t k_max,
                         double residual_tol = 1e-6);

}  // namespace csaudio
