#include "brfd/verify.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "brfd/mollifier.hpp"
#include "brfd/norms.hpp"
#include "brfd/problems.hpp"
#include "brfd/trisolve.hpp"

namespace brfd {

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

InteriorGridFunction random_interior(const Mesh& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> vals(m.num_nodes());
    for (double& v : vals) v = dist(rng);
    return InteriorGridFunction(std::move(vals));
}

// Relative defect of a bilinear identity, normalized by the bilinear scale so
// accidental cancellation of the value itself cannot dominate.
double identity_defect(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) / std::max(1.0, scale);
}

VerifyItem check_summation_by_parts(const VerifyHooks* hooks) {
    VerifyItem item{"summation_by_parts", true, ""};
    auto lap = (hooks && hooks->laplacian)
                   ? hooks->laplacian
                   : [](const InteriorGridFunction& v, const Mesh& m) { return laplacian(v, m); };
    std::mt19937_64 rng(411u);
    double worst = 0.0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 200; ++trial) {
            const InteriorGridFunction v = random_interior(m, rng);
            const InteriorGridFunction z = random_interior(m, rng);
            const InteriorGridFunction lv = lap(v, m);
            const InteriorGridFunction lz = lap(z, m);
            const double a = inner_interior(lv, z, m);
            const double b = -inner_staggered(forward_difference(v, m), forward_difference(z, m), m);
            const double c = inner_interior(v, lz, m);
            const double scale = std::max(norm_l2(lv, m) * norm_l2(z, m),
                                          seminorm_h1(v, m) * seminorm_h1(z, m));
            worst = std::max(worst, identity_defect(a, b, scale));
            worst = std::max(worst, identity_defect(a, c, std::max(scale, norm_l2(v, m) * norm_l2(lz, m))));
        }
    }
    item.pass = worst <= 1e-12;
    item.detail = "max relative defect " + format_value(worst);
    return item;
}

VerifyItem check_energy_identity() {
    VerifyItem item{"energy_identity", true, ""};
    std::mt19937_64 rng(412u);
    double worst = 0.0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 200; ++trial) {
            const InteriorGridFunction v = random_interior(m, rng);
            const double h1 = seminorm_h1(v, m);
            const double lhs = inner_interior(laplacian(v, m), v, m);
            worst = std::max(worst, identity_defect(lhs, -h1 * h1, h1 * h1));
        }
    }
    item.pass = worst <= 1e-12;
    item.detail = "max relative defect " + format_value(worst);
    return item;
}

VerifyItem check_sobolev() {
    VerifyItem item{"sobolev_inequality", true, ""};
    std::mt19937_64 rng(413u);
    int violations = 0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 1000; ++trial) {
            const InteriorGridFunction v = random_interior(m, rng);
            if (norm_inf(v) > std::sqrt(m.length()) * seminorm_h1(v, m)) ++violations;
        }
    }
    item.pass = violations == 0;
    item.detail = std::to_string(violations) + " violations in 3000 samples";
    return item;
}

VerifyItem check_poincare() {
    VerifyItem item{"poincare_inequality", true, ""};
    std::mt19937_64 rng(414u);
    int violations = 0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 1000; ++trial) {
            const InteriorGridFunction v = random_interior(m, rng);
            if (norm_l2(v, m) > m.length() * seminorm_h1(v, m)) ++violations;
        }
    }
    item.pass = violations == 0;
    item.detail = std::to_string(violations) + " violations in 3000 samples";
    return item;
}

VerifyItem check_mollifier_joins() {
    VerifyItem item{"mollifier_joins", true, ""};
    double worst = 0.0;
    for (double delta : {0.5, 1.0, 3.0}) {
        const Mollifier moll(delta);
        const double tol_scale = std::max(1.0, delta);
        // Left knot: polynomial side must match the identity branch through order 3.
        const std::array<double, 4> left{delta, 1.0, 0.0, 0.0};
        for (int order = 0; order <= 3; ++order)
            worst = std::max(worst, std::abs(moll.eval(delta, order) - left[order]) / tol_scale);
        // Right knot: value 2*delta, derivatives vanish.
        const std::array<double, 4> right{2.0 * delta, 0.0, 0.0, 0.0};
        for (int order = 0; order <= 3; ++order)
            worst =
                std::max(worst, std::abs(moll.eval(2.0 * delta, order) - right[order]) / tol_scale);
    }
    item.pass = worst <= 1e-9;
    item.detail = "max scaled join defect " + format_value(worst);
    return item;
}

VerifyItem check_mollifier_bound_and_identity() {
    VerifyItem item{"mollifier_bound_identity", true, ""};
    std::mt19937_64 rng(415u);
    for (double delta : {0.5, 1.0, 3.0}) {
        const Mollifier moll(delta);
        std::uniform_real_distribution<double> wide(-10.0 * delta, 10.0 * delta);
        for (int trial = 0; trial < 2000; ++trial) {
            const double x = wide(rng);
            if (std::abs(moll.eval(x)) > 2.0 * delta + 1e-12 * delta) {
                item.pass = false;
                item.detail = "bound violated at x = " + format_value(x);
                return item;
            }
        }
        std::uniform_real_distribution<double> band(-delta, delta);
        for (int trial = 0; trial < 2000; ++trial) {
            const double x = band(rng);
            if (moll.eval(x) != x) {
                item.pass = false;
                item.detail = "identity band violated at x = " + format_value(x);
                return item;
            }
        }
    }
    item.detail = "bound and identity band hold on 12000 samples";
    return item;
}

// Battery-local dense eliminator with partial pivoting; trisolve itself stays
// Thomas-only and the test suite keeps an independent oracle.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return x;
}

VerifyItem check_thomas_vs_dense() {
    VerifyItem item{"thomas_vs_dense", true, ""};
    std::mt19937_64 rng(416u);
    std::uniform_real_distribution<double> offd(-1.0, 1.0);
    std::uniform_int_distribution<int> size_dist(1, 300);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(size_dist(rng));
        Tridiagonal t;
        t.lower.resize(n > 0 ? n - 1 : 0);
        t.upper.resize(n > 0 ? n - 1 : 0);
        t.diag.resize(n);
        for (double& v : t.lower) v = offd(rng);
        for (double& v : t.upper) v = offd(rng);
        std::vector<double> rhs(n);
        for (double& v : rhs) v = offd(rng);
        for (std::size_t j = 0; j < n; ++j) {
            double row = 0.0;
            if (j > 0) row += std::abs(t.lower[j - 1]);
            if (j + 1 < n) row += std::abs(t.upper[j]);
            t.diag[j] = (offd(rng) > 0.0 ? 1.0 : -1.0) * (row + 1.0 + std::abs(offd(rng)));
        }
        std::vector<double> dense(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            dense[j * n + j] = t.diag[j];
            if (j > 0) dense[j * n + j - 1] = t.lower[j - 1];
            if (j + 1 < n) dense[j * n + j + 1] = t.upper[j];
        }
        const std::vector<double> x = solve(t, rhs);
        const std::vector<double> y = dense_solve(std::move(dense), rhs);
        double diff = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, std::abs(x[j] - y[j]));
            scale = std::max(scale, std::abs(y[j]));
        }
        worst = std::max(worst, diff / scale);
    }
    item.pass = worst <= 1e-12;
    item.detail = "max relative discrepancy " + format_value(worst);
    return item;
}

VerifyItem check_elliptic_projection_bound() {
    VerifyItem item{"elliptic_projection_bound", true, ""};
    ExactSolution e;
    e.u = [](double, double x) { return std::sin(M_PI * x); };
    e.u_t = [](double, double) { return 0.0; };
    e.u_x = [](double, double x) { return M_PI * std::cos(M_PI * x); };
    e.u_xx = [](double, double x) { return -M_PI * M_PI * std::sin(M_PI * x); };
    for (int Jp1 : {20, 40, 80}) {
        const Mesh m(0.0, 1.0, Jp1 - 1);
        const InteriorGridFunction v = sample_interior([&](double x) { return e.u(0.0, x); }, m);
        const InteriorGridFunction vxx =
            sample_interior([&](double x) { return e.u_xx(0.0, x); }, m);
        const InteriorGridFunction proj = elliptic_projection(vxx, m);
        const double lhs = seminorm_h1(subtract(proj, v), m);
        const double rhs = (m.length() / 12.0) * m.h() * m.h() *
                           norm_l2(elliptic_residual(v, vxx, m), m);
        if (lhs > rhs) {
            item.pass = false;
            item.detail = "bound violated at J+1 = " + std::to_string(Jp1) + ": " +
                          format_value(lhs) + " > " + format_value(rhs);
            return item;
        }
    }
    item.detail = "bound holds at J+1 in {20, 40, 80}";
    return item;
}

}  // namespace

std::vector<VerifyItem> run_verify_battery(const VerifyHooks* hooks) {
    std::vector<VerifyItem> items;
    items.push_back(check_summation_by_parts(hooks));
    items.push_back(check_energy_identity());
    items.push_back(check_sobolev());
    items.push_back(check_poincare());
    items.push_back(check_mollifier_joins());
    items.push_back(check_mollifier_bound_and_identity());
    items.push_back(check_thomas_vs_dense());
    items.push_back(check_elliptic_projection_bound());
    return items;
}

}  // namespace brfd
