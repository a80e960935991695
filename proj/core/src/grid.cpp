#include "brfd/grid.hpp"

#include <string>

namespace brfd {

Mesh::Mesh(double x_a, double x_b, int interior_nodes)
    : x_a_(x_a), x_b_(x_b), length_(x_b - x_a), interior_nodes_(interior_nodes) {
    if (!(x_b > x_a)) throw std::invalid_argument("Mesh: x_b must exceed x_a");
    if (interior_nodes < 1) throw std::invalid_argument("Mesh: J must be >= 1");
    h_ = length_ / static_cast<double>(interior_nodes + 1);
}

double Mesh::node(int j) const {
    if (j < 0 || j > interior_nodes_ + 1) throw std::out_of_range("Mesh::node: index out of range");
    if (j == 0) return x_a_;
    if (j == interior_nodes_ + 1) return x_b_;
    return x_a_ + static_cast<double>(j) * h_;
}

TimeGrid::TimeGrid(double final_time, int steps) : final_time_(final_time), steps_(steps) {
    if (!(final_time > 0.0)) throw std::invalid_argument("TimeGrid: T must be positive");
    if (steps < 1) throw std::invalid_argument("TimeGrid: N must be >= 1");
    tau_ = final_time_ / static_cast<double>(steps_);
}

double TimeGrid::t(int n) const {
    if (n < 0 || n > steps_) throw std::out_of_range("TimeGrid::t: index out of range");
    if (n == steps_) return final_time_;
    return static_cast<double>(n) * tau_;
}

void require_conforming(const GridFunction& v, const Mesh& m, const char* what) {
    if (v.size() != m.num_nodes())
        throw std::invalid_argument(std::string(what) + ": grid function has " +
                                    std::to_string(v.size()) + " nodes, mesh expects " +
                                    std::to_string(m.num_nodes()));
}

void require_conforming(const StaggeredFunction& z, const Mesh& m, const char* what) {
    if (z.size() != static_cast<std::size_t>(m.J()) + 1)
        throw std::invalid_argument(std::string(what) + ": staggered function has " +
                                    std::to_string(z.size()) + " entries, mesh expects " +
                                    std::to_string(m.J() + 1));
}

InteriorGridFunction laplacian(const InteriorGridFunction& v, const Mesh& m) {
    require_conforming(v, m, "laplacian");
    const double inv_h2 = 1.0 / (m.h() * m.h());
    InteriorGridFunction out(v.size());
    for (int j = 1; j <= m.J(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        out[k] = (v[k - 1] - 2.0 * v[k] + v[k + 1]) * inv_h2;
    }
    return out;
}

StaggeredFunction forward_difference(const GridFunction& v, const Mesh& m) {
    require_conforming(v, m, "forward_difference");
    const double inv_h = 1.0 / m.h();
    StaggeredFunction out(v.size() - 1);
    for (std::size_t j = 0; j + 1 < v.size(); ++j) out[j] = (v[j + 1] - v[j]) * inv_h;
    return out;
}

namespace {
std::vector<double> nodewise_product(const GridFunction& v, const GridFunction& w) {
    if (v.size() != w.size()) throw std::invalid_argument("hadamard: dimension mismatch");
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] * w[j];
    return out;
}
}  // namespace

GridFunction hadamard(const GridFunction& v, const GridFunction& w) {
    return GridFunction(nodewise_product(v, w));
}
InteriorGridFunction hadamard(const InteriorGridFunction& v, const GridFunction& w) {
    return InteriorGridFunction(nodewise_product(v, w));
}
InteriorGridFunction hadamard(const GridFunction& v, const InteriorGridFunction& w) {
    return InteriorGridFunction(nodewise_product(v, w));
}
InteriorGridFunction hadamard(const InteriorGridFunction& v, const InteriorGridFunction& w) {
    return InteriorGridFunction(nodewise_product(v, w));
}

GridFunction sample(const std::function<double(double)>& z, const Mesh& m) {
    GridFunction out(m.num_nodes());
    for (int j = 0; j <= m.J() + 1; ++j) out[static_cast<std::size_t>(j)] = z(m.node(j));
    return out;
}

InteriorGridFunction sample_interior(const std::function<double(double)>& z, const Mesh& m) {
    InteriorGridFunction out(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) out[static_cast<std::size_t>(j)] = z(m.node(j));
    return out;
}

namespace {
std::vector<double> nodewise_difference(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) throw std::invalid_argument("subtract: dimension mismatch");
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}
}  // namespace

GridFunction subtract(const GridFunction& a, const GridFunction& b) {
    return GridFunction(nodewise_difference(a, b));
}
InteriorGridFunction subtract(const InteriorGridFunction& a, const InteriorGridFunction& b) {
    return InteriorGridFunction(nodewise_difference(a, b));
}

std::vector<double> interior_values(const GridFunction& v) {
    if (v.size() < 2) throw std::invalid_argument("interior_values: too few nodes");
    return std::vector<double>(v.values().begin() + 1, v.values().end() - 1);
}

InteriorGridFunction from_interior(const Mesh& m, const std::vector<double>& interior) {
    if (interior.size() != static_cast<std::size_t>(m.J()))
        throw std::invalid_argument("from_interior: expected J interior values");
    std::vector<double> full(m.num_nodes(), 0.0);
    std::copy(interior.begin(), interior.end(), full.begin() + 1);
    return InteriorGridFunction(std::move(full));
}

}  // namespace brfd
