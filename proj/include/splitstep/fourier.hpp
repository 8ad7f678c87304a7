#pragma once

#include <span>
#include <vector>

#include "splitstep/field.hpp"

namespace splitstep {

// Transform convention (continuous form):
//   F(w) = int f(t) e^{+iwt} dt,      f(t) = (1/2pi) int F(w) e^{-iwt} dw
// and likewise for (x, k_x), (y, k_y). Discretely, with t_j = j dt:
//   F_l = dt * sum_j f_j e^{+i w_l t_j},   f_j = 1/(n dt) * sum_l F_l e^{-i w_l t_j}
// so the forward carries the spacing and the inverse carries dw/2pi = 1/(n dt).
// Under this convention d/dtau corresponds to multiplication by -iw.

enum class Direction { forward, inverse };

/// Transforms the named axes of a raw row-major (nx, ny, nt) array in place.
/// No domain bookkeeping; intended for coefficient arrays such as N.
void transform(std::span<cplx> data, const Grid& grid, AxisSet axes, Direction dir);

/// Transform of a single length-n line with spacing d.
void transform_line(std::span<cplx> line, double spacing, Direction dir);

/// Returns the field with the named axes moved to spectral representation.
/// Throws ErrorKind::invalid_state if any named axis is already spectral.
ComplexField forward(const ComplexField& field, AxisSet axes);
ComplexField inverse(const ComplexField& field, AxisSet axes);
void forward_in_place(ComplexField& field, AxisSet axes);
void inverse_in_place(ComplexField& field, AxisSet axes);

/// Moves every axis to the requested representation, transforming only those that differ.
void to_domain(ComplexField& field, std::array<Domain, 3> target);

/// d^order/dtau^order of a real-tau array over the whole grid via the -iw identity.
std::vector<cplx> tau_derivative(std::span<const cplx> values, const Grid& grid, int order = 1);

}  // namespace splitstep
