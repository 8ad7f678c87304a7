#pragma once

#include <span>
#include <vector>

#include "splitstep/linear_operator.hpp"
#include "splitstep/model.hpp"

namespace splitstep {

/// du/dzeta at every grid point.
struct RhsEvaluation {
  std::vector<cplx> derivative;
};

/// P u + c1 N u + c2 d(N u)/dtau [+ f o u], with N evaluated on the field itself
/// (no freezing). Derivatives are spectral.
RhsEvaluation rhs(const ComplexField& field, const EquationModel& model, const LinearSymbol& symbol);

/// n_ref classical RK4 steps of size dzeta_ref on rhs. Throws ErrorKind::oracle on blow-up.
ComplexField reference_integrate(const ComplexField& initial, const EquationModel& model,
                                 const LinearSymbol& symbol, double dzeta_ref, std::size_t n_ref);

/// Largest nt accepted by the dense oracles.
inline constexpr std::size_t kDenseOracleMaxSize = 256;

/// Spectral differentiation matrix for a periodic line of n samples at spacing dt:
/// D[j][m] = (1/n) sum_l (-i w_l) e^{-i w_l (j - m) dt}, row-major.
std::vector<cplx> spectral_derivative_matrix(std::size_t n, double dt);

/// exp(dz diag(c2 N) D) u by scaling and squaring of a truncated Taylor series.
/// Throws ErrorKind::oracle when the series does not reach the tolerance.
std::vector<cplx> dense_alpha2_expm(std::span<const cplx> n_frozen, cplx c2, double dz,
                                    std::span<const cplx> u_line, double dt, double tolerance = 1e-12);

}  // namespace splitstep
