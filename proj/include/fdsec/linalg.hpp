#pragma once

#include "fdsec/types.hpp"

namespace fdsec {

/// Some unit vector orthogonal to v (v need not be normalised). Requires v.size() >= 2.
CVec any_orthogonal_unit(const CVec& v);

/// Orthonormal basis (columns) of the orthogonal complement of v, size n x (n - 1).
/// A zero v yields the last n - 1 columns of the identity.
CMat orthogonal_complement(const CVec& v);

/// I - v v^H / |v|^2 applied to x; identity when v is zero.
CVec project_out(const CVec& v, const CVec& x);

}  // namespace fdsec
