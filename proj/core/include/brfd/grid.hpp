#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace brfd {

/// Uniform partition of [x_a, x_b] with J interior nodes and width h = L/(J+1).
/// Nodes are x_j = x_a + j*h for j = 0..J+1; both endpoints are returned exactly.
class Mesh {
public:
    Mesh(double x_a, double x_b, int interior_nodes);

    double x_a() const { return x_a_; }
    double x_b() const { return x_b_; }
    double h() const { return h_; }
    double length() const { return length_; }
    int J() const { return interior_nodes_; }
    std::size_t num_nodes() const { return static_cast<std::size_t>(interior_nodes_) + 2; }

    double node(int j) const;

private:
    double x_a_;
    double x_b_;
    double length_;
    double h_;
    int interior_nodes_;
};

/// Uniform partition of [0, T] into N steps of size tau = T/N.
class TimeGrid {
public:
    TimeGrid(double final_time, int steps);

    double T() const { return final_time_; }
    int N() const { return steps_; }
    double tau() const { return tau_; }

    double t(int n) const;
    /// Midpoint t_n + tau/2 of the step starting at node n.
    double t_half(int n) const { return t(n) + 0.5 * tau_; }
    /// The startup quarter time tau/4.
    double t_quarter() const { return 0.25 * tau_; }

private:
    double final_time_;
    double tau_;
    int steps_;
};

/// Nodal values (v_0, ..., v_{J+1}) on a mesh; no boundary constraint.
class GridFunction {
public:
    explicit GridFunction(std::size_t num_nodes, double fill = 0.0) : v_(num_nodes, fill) {}
    explicit GridFunction(std::vector<double> values) : v_(std::move(values)) {}

    double operator[](std::size_t j) const { return v_[j]; }
    double& operator[](std::size_t j) { return v_[j]; }
    std::size_t size() const { return v_.size(); }
    const std::vector<double>& values() const { return v_; }

    friend bool operator==(const GridFunction& a, const GridFunction& b) { return a.v_ == b.v_; }

protected:
    std::vector<double> v_;
};

/// Member of the zero-boundary subspace: full-length storage, endpoints forced
/// to exactly 0 by every constructor (not merely assumed).
class InteriorGridFunction : public GridFunction {
public:
    explicit InteriorGridFunction(std::size_t num_nodes) : GridFunction(num_nodes, 0.0) {}
    explicit InteriorGridFunction(std::vector<double> values) : GridFunction(std::move(values)) {
        zero_endpoints();
    }
    explicit InteriorGridFunction(GridFunction g) : GridFunction(std::move(g)) { zero_endpoints(); }

private:
    void zero_endpoints() {
        if (v_.empty()) throw std::invalid_argument("InteriorGridFunction: empty value sequence");
        v_.front() = 0.0;
        v_.back() = 0.0;
    }
};

/// Values on the J+1 cell midpoints (indices 0..J); carries forward differences.
class StaggeredFunction {
public:
    explicit StaggeredFunction(std::size_t size, double fill = 0.0) : v_(size, fill) {}
    explicit StaggeredFunction(std::vector<double> values) : v_(std::move(values)) {}

    double operator[](std::size_t j) const { return v_[j]; }
    double& operator[](std::size_t j) { return v_[j]; }
    std::size_t size() const { return v_.size(); }
    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

void require_conforming(const GridFunction& v, const Mesh& m, const char* what);
void require_conforming(const StaggeredFunction& z, const Mesh& m, const char* what);

/// Second central difference (v_{j-1} - 2 v_j + v_{j+1})/h^2 at j = 1..J, zero endpoints.
InteriorGridFunction laplacian(const InteriorGridFunction& v, const Mesh& m);

/// Forward difference (v_{j+1} - v_j)/h for j = 0..J.
StaggeredFunction forward_difference(const GridFunction& v, const Mesh& m);

/// Nodewise product. Interior status is preserved when either factor has it.
GridFunction hadamard(const GridFunction& v, const GridFunction& w);
InteriorGridFunction hadamard(const InteriorGridFunction& v, const GridFunction& w);
InteriorGridFunction hadamard(const GridFunction& v, const InteriorGridFunction& w);
InteriorGridFunction hadamard(const InteriorGridFunction& v, const InteriorGridFunction& w);

/// Pointwise samples z(x_j), j = 0..J+1.
GridFunction sample(const std::function<double(double)>& z, const Mesh& m);

/// Samples with endpoints forced to 0 regardless of z.
InteriorGridFunction sample_interior(const std::function<double(double)>& z, const Mesh& m);

GridFunction subtract(const GridFunction& a, const GridFunction& b);
InteriorGridFunction subtract(const InteriorGridFunction& a, const InteriorGridFunction& b);

/// Copy of the interior values v_1..v_J.
std::vector<double> interior_values(const GridFunction& v);

/// Wrap interior values (length J) into a zero-boundary grid function.
InteriorGridFunction from_interior(const Mesh& m, const std::vector<double>& interior);

namespace detail {
inline std::size_t common_size(const GridFunction& first) { return first.size(); }
template <class... Rest>
std::size_t common_size(const GridFunction& first, const Rest&... rest) {
    if (first.size() != common_size(rest...))
        throw std::invalid_argument("compose: dimension mismatch between grid functions");
    return first.size();
}
}  // namespace detail

/// Nodewise application of q to one or more conforming grid functions.
template <class Q, class... Ws>
GridFunction compose(Q&& q, const Ws&... ws) {
    static_assert(sizeof...(Ws) >= 1, "compose needs at least one grid function");
    const std::size_t n = detail::common_size(ws...);
    GridFunction out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = q(ws[j]...);
    return out;
}

}  // namespace brfd
