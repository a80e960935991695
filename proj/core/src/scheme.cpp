#include "brfd/scheme.hpp"

#include <cmath>
#include <utility>

#include "brfd/mollifier.hpp"
#include "brfd/norms.hpp"
#include "brfd/trisolve.hpp"

namespace brfd {

namespace {

InteriorGridFunction sample_forcing_average(const Problem& p, const Mesh& m, double ta,
                                            double tb) {
    return sample_interior([&](double x) { return 0.5 * (p.f(ta, x) + p.f(tb, x)); }, m);
}

// Right-hand side of the averaged step A(dt, phi) x = b from state u:
// b = u + (dt/2) Laplacian(u) + (dt/2) phi (x) u + dt * f_avg, interior values.
std::vector<double> averaged_rhs(const InteriorGridFunction& u, const GridFunction& phi,
                                 const InteriorGridFunction& f_avg, double dt, const Mesh& m) {
    const InteriorGridFunction lap = laplacian(u, m);
    std::vector<double> rhs(static_cast<std::size_t>(m.J()));
    for (int j = 1; j <= m.J(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        rhs[k - 1] = u[k] + 0.5 * dt * (lap[k] + phi[k] * u[k]) + dt * f_avg[k];
    }
    return rhs;
}

InteriorGridFunction solve_averaged_step(const InteriorGridFunction& u, const GridFunction& phi,
                                         const InteriorGridFunction& f_avg, double dt,
                                         const Mesh& m, int step_for_errors) {
    const Tridiagonal op = assemble_step_operator(m, dt, phi);
    try {
        return from_interior(m, solve(op, averaged_rhs(u, phi, f_avg, dt, m)));
    } catch (const SingularSystemError& e) {
        throw SingularSystemError(
            "time step " + std::to_string(step_for_errors) + ": " + e.what(), e.pivot_index);
    }
}

GridFunction apply_g(const Problem& p, const GridFunction& v) {
    return compose([&](double a) { return p.g(a); }, v);
}

// Mollified image together with a bitwise identity flag, so runs can report
// whether they ever left the identity band.
GridFunction mollify_tracked(const Mollifier& moll, const GridFunction& v, bool& identity) {
    GridFunction out = moll.apply(v);
    if (identity) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (out[j] != v[j]) {
                identity = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace

SchemeState scheme_initialize(const Problem& p, const Mesh& m, const TimeGrid& tg) {
    if (std::abs(p.u0(m.x_a())) > 1e-12 || std::abs(p.u0(m.x_b())) > 1e-12)
        throw std::invalid_argument(
            "scheme_initialize: initial data violates the homogeneous Dirichlet compatibility");

    SchemeState st;
    st.n = 0;
    st.u = sample_interior(p.u0, m);
    const GridFunction g_u0 = apply_g(p, st.u);
    const double dt = 0.5 * tg.tau();
    st.condition_margin = check_step_condition(dt, norm_inf(g_u0)).margin;
    st.u_half = solve_averaged_step(st.u, g_u0, sample_forcing_average(p, m, tg.t(0), tg.t_half(0)),
                                    dt, m, 0);
    return st;
}

SchemeState scheme_first_step(SchemeState state, const Problem& p, const Mesh& m,
                              const TimeGrid& tg, const SchemeVariant& variant) {
    if (state.n != 0 || !state.u_half)
        throw std::invalid_argument("scheme_first_step: state is not a startup state");

    GridFunction phi(m.num_nodes());
    GridFunction phi_system(m.num_nodes());
    switch (variant.kind) {
        case SchemeVariant::Kind::Brfd:
            phi = apply_g(p, *state.u_half);
            phi_system = phi;
            break;
        case SchemeVariant::Kind::BrfdSuboptimalInit:
            phi = apply_g(p, state.u);
            phi_system = phi;
            break;
        case SchemeVariant::Kind::Mbrfd: {
            const Mollifier moll(variant.delta);
            phi = apply_g(p, mollify_tracked(moll, *state.u_half, state.mollifier_identity));
            phi_system = mollify_tracked(moll, phi, state.mollifier_identity);
            break;
        }
        case SchemeVariant::Kind::CrankNicolsonNewton:
            throw std::invalid_argument("scheme_first_step: not a relaxation variant");
    }

    const double dt = tg.tau();
    const double bound =
        variant.kind == SchemeVariant::Kind::Mbrfd ? 2.0 * variant.delta : norm_inf(phi_system);
    state.condition_margin = check_step_condition(dt, bound).margin;
    state.u = solve_averaged_step(state.u, phi_system,
                                  sample_forcing_average(p, m, tg.t(0), tg.t(1)), dt, m, 1);
    state.phi = std::move(phi);
    state.n = 1;
    return state;
}

SchemeState scheme_advance(SchemeState state, const Problem& p, const Mesh& m, const TimeGrid& tg,
                           const SchemeVariant& variant) {
    if (state.n < 1 || !state.phi)
        throw std::invalid_argument("scheme_advance: state has no midpoint coefficient yet");
    if (state.n >= tg.N()) throw std::invalid_argument("scheme_advance: past the final time");

    GridFunction phi(m.num_nodes());
    GridFunction phi_system(m.num_nodes());
    if (variant.kind == SchemeVariant::Kind::Mbrfd) {
        const Mollifier moll(variant.delta);
        const GridFunction g_mu =
            apply_g(p, mollify_tracked(moll, state.u, state.mollifier_identity));
        for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = 2.0 * g_mu[j] - (*state.phi)[j];
        phi_system = mollify_tracked(moll, phi, state.mollifier_identity);
    } else {
        const GridFunction g_u = apply_g(p, state.u);
        for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = 2.0 * g_u[j] - (*state.phi)[j];
        phi_system = phi;
    }

    const double dt = tg.tau();
    const double bound =
        variant.kind == SchemeVariant::Kind::Mbrfd ? 2.0 * variant.delta : norm_inf(phi_system);
    state.condition_margin = check_step_condition(dt, bound).margin;
    state.u = solve_averaged_step(
        state.u, phi_system, sample_forcing_average(p, m, tg.t(state.n), tg.t(state.n + 1)), dt, m,
        state.n + 1);
    state.phi = std::move(phi);
    state.n += 1;
    return state;
}

InteriorGridFunction crank_nicolson_step(const InteriorGridFunction& u, int n, const Problem& p,
                                         const Mesh& m, const TimeGrid& tg, double tol,
                                         int max_iter) {
    const double dt = tg.tau();
    const InteriorGridFunction f_avg = sample_forcing_average(p, m, tg.t(n), tg.t(n + 1));
    const std::vector<double> b = averaged_rhs(u, apply_g(p, u), f_avg, dt, m);

    InteriorGridFunction v = u;
    double residual_norm = 0.0;
    for (int it = 0; it <= max_iter; ++it) {
        // F(v) = v - (dt/2) Laplacian(v) - (dt/2) g(v)(x)v - b on the interior.
        const InteriorGridFunction lap = laplacian(v, m);
        std::vector<double> F(static_cast<std::size_t>(m.J()));
        residual_norm = 0.0;
        for (int j = 1; j <= m.J(); ++j) {
            const auto k = static_cast<std::size_t>(j);
            F[k - 1] = v[k] - 0.5 * dt * (lap[k] + p.g(v[k]) * v[k]) - b[k - 1];
            residual_norm = std::max(residual_norm, std::abs(F[k - 1]));
        }
        if (residual_norm <= tol * (1.0 + norm_inf(v))) return v;
        if (it == max_iter) break;

        const GridFunction phi_jac =
            compose([&](double a) { return p.g(a) + p.g_prime(a) * a; }, v);
        const std::vector<double> dv = solve(assemble_step_operator(m, dt, phi_jac), std::move(F));
        std::vector<double> next = interior_values(v);
        for (std::size_t k = 0; k < next.size(); ++k) next[k] -= dv[k];
        v = from_interior(m, next);
    }
    throw NewtonDivergenceError(n, residual_norm);
}

Trajectory run(const Problem& p, const Mesh& m, const TimeGrid& tg, const SchemeVariant& variant,
               int record_stride) {
    if (record_stride < 1) throw std::invalid_argument("run: record stride must be >= 1");

    Trajectory traj;
    traj.record_stride = record_stride;
    traj.total_steps = tg.N();

    auto record = [&](int n, const InteriorGridFunction& u) {
        if (n % record_stride == 0 || n == tg.N()) {
            traj.steps.push_back(n);
            traj.states.push_back(u);
        }
    };

    if (variant.kind == SchemeVariant::Kind::CrankNicolsonNewton) {
        if (std::abs(p.u0(m.x_a())) > 1e-12 || std::abs(p.u0(m.x_b())) > 1e-12)
            throw std::invalid_argument(
                "run: initial data violates the homogeneous Dirichlet compatibility");
        InteriorGridFunction u = sample_interior(p.u0, m);
        record(0, u);
        for (int n = 0; n < tg.N(); ++n) {
            u = crank_nicolson_step(u, n, p, m, tg, variant.newton_tol, variant.newton_max_iter);
            record(n + 1, u);
        }
        return traj;
    }

    SchemeState st = scheme_initialize(p, m, tg);
    traj.u_half = st.u_half;
    traj.condition_margins.push_back(st.condition_margin);
    record(0, st.u);

    st = scheme_first_step(std::move(st), p, m, tg, variant);
    traj.condition_margins.push_back(st.condition_margin);
    if (record_stride == 1) traj.phis.push_back(*st.phi);
    record(1, st.u);

    for (int n = 1; n < tg.N(); ++n) {
        st = scheme_advance(std::move(st), p, m, tg, variant);
        traj.condition_margins.push_back(st.condition_margin);
        if (record_stride == 1) traj.phis.push_back(*st.phi);
        record(st.n, st.u);
    }

    for (double margin : traj.condition_margins)
        if (margin < 0.0) traj.condition_warning = true;
    if (variant.kind == SchemeVariant::Kind::Mbrfd)
        traj.mollifier_identity_regime = st.mollifier_identity;
    return traj;
}

}  // namespace brfd
