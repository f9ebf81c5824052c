#pragma once

#include <vector>

#include "nlslab/field.hpp"

namespace nls {

// sum |f|^q * cell_volume (rectangle rule; spectrally accurate for smooth
// decaying fields), q >= 1
double lp_norm_pp(const Field& f, double q);

// per-axis ||d_j f||_{L2}^2 by spectral differentiation
std::vector<double> gradient_norms_sq(const Field& f);

// sum x_axis^2 |f|^2 * cell_volume, coordinates relative to the box center
double weighted_moment(const Field& f, int axis);

// first-moment centroid sum x_axis |f|^2 / sum |f|^2; 0 for the zero field
double centroid(const Field& f, int axis);

Field laplacian(const Field& f);

// periodic shift f(x - y) on transverse axes via frequency-space phases;
// offsets holds one entry per transverse axis, or n_dims entries with the
// confined entry required to be zero
Field translate(const Field& f, const std::vector<double>& offsets);

// L2 mass in the outer margin of the box: per axis j the slab
// |x_j| >= (1 - 2*margin_fraction) * L_j, reported as the max over axes.
// margin_fraction in (0, 0.5).
double boundary_mass(const Field& f, double margin_fraction);

// 2/3-rule spectral mask applied in place
void apply_dealias(Field& f);

}  // namespace nls
