#pragma once

#include <cstddef>
#include <vector>

#include "vhasian/riccati.hpp"

namespace vhasian {

/// Coefficients of the classical Heston representation of the joint
/// transform (K = 1), written for the time-inverted Riccati ODE
///   C'(y) = z1 y^2 + z2 y + z3 - kappa C + sigma^2/2 C^2,  C(0) = z4.
struct ClassicalCoefficients {
  cplx z0;
  cplx z1;
  cplx z2;
  cplx z3;
  cplx z4;
};

ClassicalCoefficients classical_coefficients(const TransformArg& arg, const ModelParams& params);

/// C sampled at y_i = i T / n_nodes, integrated by classical RK4 with
/// `substeps` steps per interval.
std::vector<cplx> classical_c_path(const TransformArg& arg, const ModelParams& params,
                                   std::size_t n_nodes, std::size_t substeps = 1);

/// exp(z0 + v0 C(T) + kappa theta int_0^T C), with (C, D) advanced together
/// by fixed-step RK4 so D keeps fourth order.
cplx classical_psi0(const TransformArg& arg, const ModelParams& params,
                    std::size_t ode_steps = 4096);

/// max_i |phi2(t_i) - (C(t_i) - rho/sigma phi1(t_i))| with phi2 from the
/// Volterra solver under the classical kernel and C from RK4 (8 substeps per
/// grid interval).
double substitution_check(const TransformArg& arg, const ModelParams& params,
                          std::size_t n_steps);

}  // namespace vhasian
