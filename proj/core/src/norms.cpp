#include "brfd/norms.hpp"

#include <cmath>
#include <cstdlib>

namespace brfd {

namespace {

constexpr std::size_t kCompensatedThreshold = 10000;

// Sum of a[j]*b[j] over [begin, end). Plain accumulation for small ranges,
// Kahan compensation above the threshold so identity tests stay tight at large J.
double dot_range(const GridFunction& a, const GridFunction& b, std::size_t begin, std::size_t end) {
    if (end - begin <= kCompensatedThreshold) {
        double s = 0.0;
        for (std::size_t j = begin; j < end; ++j) s += a[j] * b[j];
        return s;
    }
    double s = 0.0;
    double c = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        const double y = a[j] * b[j] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double dot_staggered(const StaggeredFunction& a, const StaggeredFunction& b) {
    const std::size_t n = a.size();
    if (n <= kCompensatedThreshold) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
        return s;
    }
    double s = 0.0;
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double y = a[j] * b[j] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

double inner_interior(const InteriorGridFunction& v, const InteriorGridFunction& z, const Mesh& m) {
    require_conforming(v, m, "inner_interior");
    require_conforming(z, m, "inner_interior");
    return m.h() * dot_range(v, z, 1, v.size() - 1);
}

double norm_l2(const InteriorGridFunction& v, const Mesh& m) {
    return std::sqrt(inner_interior(v, v, m));
}

double norm_inf(const GridFunction& v) {
    double mx = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) mx = std::max(mx, std::abs(v[j]));
    return mx;
}

double seminorm_h1(const GridFunction& v, const Mesh& m) {
    require_conforming(v, m, "seminorm_h1");
    return norm_l2_staggered(forward_difference(v, m), m);
}

double inner_staggered(const StaggeredFunction& z, const StaggeredFunction& w, const Mesh& m) {
    require_conforming(z, m, "inner_staggered");
    require_conforming(w, m, "inner_staggered");
    return m.h() * dot_staggered(z, w);
}

double norm_l2_staggered(const StaggeredFunction& z, const Mesh& m) {
    return std::sqrt(inner_staggered(z, z, m));
}

double norm_inf_staggered(const StaggeredFunction& z) {
    double mx = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) mx = std::max(mx, std::abs(z[j]));
    return mx;
}

}  // namespace brfd
