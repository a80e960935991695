#pragma once

#include "brfd/grid.hpp"

namespace brfd {

/// (v, z)_{0,h} = h * sum_{j=1}^{J} v_j z_j.
double inner_interior(const InteriorGridFunction& v, const InteriorGridFunction& z, const Mesh& m);

/// ||v||_{0,h} = sqrt((v, v)_{0,h}).
double norm_l2(const InteriorGridFunction& v, const Mesh& m);

/// Max over all J+2 nodes.
double norm_inf(const GridFunction& v);

/// |w|_{1,h}: staggered L2 norm of the forward difference. A norm on the
/// zero-boundary subspace; a seminorm on general grid functions.
double seminorm_h1(const GridFunction& v, const Mesh& m);

/// ((z, w))_{0,h} = h * sum_{j=0}^{J} z_j w_j.
double inner_staggered(const StaggeredFunction& z, const StaggeredFunction& w, const Mesh& m);

double norm_l2_staggered(const StaggeredFunction& z, const Mesh& m);

/// Max over the J+1 midpoint entries.
double norm_inf_staggered(const StaggeredFunction& z);

}  // namespace brfd
