#include "brfd/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "brfd/trisolve.hpp"

namespace brfd {

Problem manufacture(ExactSolution exact, std::function<double(double)> g,
                    std::function<double(double)> g_prime) {
    Problem p;
    p.g = g;
    p.g_prime = std::move(g_prime);
    p.f = [u = exact.u, u_t = exact.u_t, u_xx = exact.u_xx, g](double t, double x) {
        const double uv = u(t, x);
        return u_t(t, x) - u_xx(t, x) - g(uv) * uv;
    };
    p.u0 = [u = exact.u](double x) { return u(0.0, x); };
    p.exact = std::move(exact);
    return p;
}

namespace {

Problem exp_sine_problem(double x_a, double x_b, std::function<double(double)> g,
                         std::function<double(double)> g_prime) {
    const double w = M_PI / (x_b - x_a);
    ExactSolution e;
    e.u = [w, x_a](double t, double x) { return std::exp(-t) * std::sin(w * (x - x_a)); };
    e.u_t = [w, x_a](double t, double x) { return -std::exp(-t) * std::sin(w * (x - x_a)); };
    e.u_x = [w, x_a](double t, double x) { return std::exp(-t) * w * std::cos(w * (x - x_a)); };
    e.u_xx = [w, x_a](double t, double x) {
        return -w * w * std::exp(-t) * std::sin(w * (x - x_a));
    };
    return manufacture(std::move(e), std::move(g), std::move(g_prime));
}

Problem linear_heat_mode(double x_a, double x_b, int k) {
    const double w = static_cast<double>(k) * M_PI / (x_b - x_a);
    const double mu = w * w;
    ExactSolution e;
    e.u = [w, mu, x_a](double t, double x) { return std::exp(-mu * t) * std::sin(w * (x - x_a)); };
    e.u_t = [w, mu, x_a](double t, double x) {
        return -mu * std::exp(-mu * t) * std::sin(w * (x - x_a));
    };
    e.u_x = [w, mu, x_a](double t, double x) {
        return w * std::exp(-mu * t) * std::cos(w * (x - x_a));
    };
    e.u_xx = [w, mu, x_a](double t, double x) {
        return -mu * std::exp(-mu * t) * std::sin(w * (x - x_a));
    };
    Problem p;
    p.g = [](double) { return 0.0; };
    p.g_prime = [](double) { return 0.0; };
    p.f = [](double, double) { return 0.0; };
    p.u0 = [u = e.u](double x) { return u(0.0, x); };
    p.exact = std::move(e);
    return p;
}

}  // namespace

Problem catalog_problem(const std::string& name, double x_a, double x_b) {
    if (name == "zero") {
        Problem p;
        p.g = [](double u) { return u; };
        p.g_prime = [](double) { return 1.0; };
        p.f = [](double, double) { return 0.0; };
        p.u0 = [](double) { return 0.0; };
        ExactSolution e;
        e.u = [](double, double) { return 0.0; };
        e.u_t = e.u;
        e.u_x = e.u;
        e.u_xx = e.u;
        p.exact = std::move(e);
        return p;
    }
    if (name == "mms_exp_sine_gsin")
        return exp_sine_problem(
            x_a, x_b, [](double u) { return std::sin(u); }, [](double u) { return std::cos(u); });
    if (name == "mms_exp_sine_gu")
        return exp_sine_problem(
            x_a, x_b, [](double u) { return u; }, [](double) { return 1.0; });
    const std::string prefix = "linear_heat_mode_";
    if (name.rfind(prefix, 0) == 0) {
        const std::string suffix = name.substr(prefix.size());
        if (suffix == "k") return linear_heat_mode(x_a, x_b, 1);
        try {
            const int k = std::stoi(suffix);
            if (k >= 1) return linear_heat_mode(x_a, x_b, k);
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument("catalog_problem: unknown problem name '" + name + "'");
}

namespace {

const ExactSolution& require_exact(const Problem& p, const char* what) {
    if (!p.exact) throw std::invalid_argument(std::string(what) + ": problem has no exact solution");
    return *p.exact;
}

}  // namespace

InteriorGridFunction residual_time_node(const Problem& p, const Mesh& m, const TimeGrid& tg,
                                        int n) {
    const ExactSolution& e = require_exact(p, "residual_time_node");
    if (n < 0 || n > tg.N() - 1)
        throw std::out_of_range("residual_time_node: step index out of range");
    const double t0 = tg.t(n);
    const double t1 = tg.t(n + 1);
    const double tm = tg.t_half(n);
    const double tau = tg.tau();
    InteriorGridFunction r(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const double x = m.node(j);
        const double u0 = e.u(t0, x);
        const double u1 = e.u(t1, x);
        r[static_cast<std::size_t>(j)] =
            (u1 - u0) / tau - 0.5 * (e.u_xx(t1, x) + e.u_xx(t0, x)) -
            p.g(e.u(tm, x)) * 0.5 * (u1 + u0) - 0.5 * (p.f(t1, x) + p.f(t0, x));
    }
    return r;
}

InteriorGridFunction residual_half_node(const Problem& p, const Mesh& m, const TimeGrid& tg) {
    const ExactSolution& e = require_exact(p, "residual_half_node");
    const double th = tg.t_half(0);
    const double tau = tg.tau();
    InteriorGridFunction r(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const double x = m.node(j);
        const double u0 = e.u(0.0, x);
        const double uh = e.u(th, x);
        r[static_cast<std::size_t>(j)] =
            (uh - u0) / (0.5 * tau) - 0.5 * (e.u_xx(th, x) + e.u_xx(0.0, x)) -
            p.g(u0) * 0.5 * (uh + u0) - 0.5 * (p.f(th, x) + p.f(0.0, x));
    }
    return r;
}

HalfResidualParts residual_half_parts(const Problem& p, const Mesh& m, const TimeGrid& tg) {
    const ExactSolution& e = require_exact(p, "residual_half_parts");
    const double th = tg.t_half(0);
    const double tq = tg.t_quarter();
    const double tau = tg.tau();
    HalfResidualParts parts{InteriorGridFunction(m.num_nodes()), InteriorGridFunction(m.num_nodes()),
                            InteriorGridFunction(m.num_nodes()),
                            InteriorGridFunction(m.num_nodes())};
    for (int j = 1; j <= m.J(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        const double x = m.node(j);
        const double u0 = e.u(0.0, x);
        const double uh = e.u(th, x);
        const double uq = e.u(tq, x);
        parts.a[k] = (uh - u0) / (0.5 * tau) - e.u_t(tq, x);
        parts.b[k] = 0.5 * (e.u_xx(th, x) + e.u_xx(0.0, x)) - e.u_xx(tq, x);
        parts.c[k] = -(p.g(uq) - p.g(u0)) * uq + p.g(u0) * (0.5 * (uh + u0) - uq);
        parts.d[k] = 0.5 * (p.f(th, x) + p.f(0.0, x)) - p.f(tq, x);
    }
    return parts;
}

namespace {

InteriorGridFunction space_defect(const Problem& p, const Mesh& m, double ta, double tb) {
    const ExactSolution& e = *p.exact;
    InteriorGridFunction avg(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const double x = m.node(j);
        avg[static_cast<std::size_t>(j)] = 0.5 * (e.u(tb, x) + e.u(ta, x));
    }
    const InteriorGridFunction lap = laplacian(avg, m);
    InteriorGridFunction out(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        const double x = m.node(j);
        out[k] = 0.5 * (e.u_xx(tb, x) + e.u_xx(ta, x)) - lap[k];
    }
    return out;
}

}  // namespace

InteriorGridFunction residual_space(const Problem& p, const Mesh& m, const TimeGrid& tg, int n) {
    require_exact(p, "residual_space");
    if (n < 0 || n > tg.N() - 1) throw std::out_of_range("residual_space: step index out of range");
    return space_defect(p, m, tg.t(n), tg.t(n + 1));
}

InteriorGridFunction residual_space_half(const Problem& p, const Mesh& m, const TimeGrid& tg) {
    require_exact(p, "residual_space_half");
    return space_defect(p, m, 0.0, tg.t_half(0));
}

InteriorGridFunction residual_midpoint(const Problem& p, const Mesh& m, const TimeGrid& tg,
                                       int n) {
    const ExactSolution& e = require_exact(p, "residual_midpoint");
    if (n < 1 || n > tg.N() - 1)
        throw std::out_of_range("residual_midpoint: step index must be in 1..N-1");
    InteriorGridFunction r(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const double x = m.node(j);
        r[static_cast<std::size_t>(j)] =
            0.5 * (p.g(e.u(tg.t_half(n), x)) + p.g(e.u(tg.t_half(n - 1), x))) -
            p.g(e.u(tg.t(n), x));
    }
    return r;
}

InteriorGridFunction elliptic_projection(const InteriorGridFunction& v_xx_samples, const Mesh& m) {
    require_conforming(v_xx_samples, m, "elliptic_projection");
    const auto n = static_cast<std::size_t>(m.J());
    const double inv_h2 = 1.0 / (m.h() * m.h());
    // Solve -Laplacian(w) = -(v'' samples): positive definite, strictly solvable.
    Tridiagonal t;
    t.lower.assign(n - 1, -inv_h2);
    t.upper.assign(n - 1, -inv_h2);
    t.diag.assign(n, 2.0 * inv_h2);
    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = -v_xx_samples[j + 1];
    return from_interior(m, solve(t, std::move(rhs)));
}

InteriorGridFunction elliptic_projection_at(const ExactSolution& exact, double t, const Mesh& m) {
    return elliptic_projection(
        sample_interior([&](double x) { return exact.u_xx(t, x); }, m), m);
}

InteriorGridFunction elliptic_residual(const InteriorGridFunction& v_samples,
                                       const InteriorGridFunction& v_xx_samples, const Mesh& m) {
    require_conforming(v_samples, m, "elliptic_residual");
    require_conforming(v_xx_samples, m, "elliptic_residual");
    const InteriorGridFunction lap = laplacian(v_samples, m);
    const double scale = 12.0 / (m.h() * m.h());
    InteriorGridFunction out(m.num_nodes());
    for (int j = 1; j <= m.J(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        out[k] = scale * (lap[k] - v_xx_samples[k]);
    }
    return out;
}

}  // namespace brfd
