#pragma once

#include <optional>
#include <span>
#include <vector>

#include "splitstep/errors.hpp"
#include "splitstep/model.hpp"

namespace splitstep {

/// N = beta(u, v, coordinates) at every grid point. Field must be all-real; aux, when
/// given, has one value per grid point.
std::vector<cplx> eval_N(const EquationModel& model, const ComplexField& field,
                         std::span<const cplx> aux = {});

/// Integrates the auxiliary ODE along tau with classical RK4, one grid step at a time.
/// Half-step values of u come from band-limited interpolation (spectral shift by dt/2).
std::vector<cplx> integrate_auxiliary(const EquationModel& model, const ComplexField& field);

/// e^{(c1 N + c2 dN/dtau) * step} u, pointwise in real space.
ComplexField apply_exp_alpha1(const ComplexField& field, const EquationModel& model,
                              std::span<const cplx> n_frozen, double effective_step, WarningLog* log = nullptr);

/// Mixed-domain exponential of c2 N d/dtau over effective_step. The input must hold
/// u(x, y, w'), i.e. tau spectral and x, y real; the result is u(x, y, tau).
///
/// For each transverse point and each output tau_j the multiplier
///   e^{-dz r_j i w'} + dz^2/2 r_j r'_j (-i w') + dz^3/6 [(r_j^2 r''_j + r_j r'_j^2)(-i w') + 3 r_j^2 r'_j (-i w')^2]
/// with r = c2 N is contracted against U(w') and inverse-transformed at tau_j only.
/// The commutator terms are present according to model.alpha2_order.
ComplexField apply_exp_alpha2(const ComplexField& field, const EquationModel& model,
                              std::span<const cplx> n_frozen, double effective_step, WarningLog* log = nullptr);

/// Same operation on a single tau line (spectral in, real out).
std::vector<cplx> alpha2_line(std::span<const cplx> spectrum, std::span<const cplx> r, std::span<const cplx> dr,
                              std::span<const cplx> ddr, double dt, double dz, Alpha2Order order,
                              double* peak_multiplier = nullptr);

/// F^{-1}[e^{step f(w)} F[u]] along tau at every transverse point. Field must be all-real.
ComplexField apply_exp_convolution(const ComplexField& field, const RamanKernel& kernel, double effective_step,
                                   WarningLog* log = nullptr);

}  // namespace splitstep
