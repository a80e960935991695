#include <doctest.h>

#include <cmath>
#include <random>

#include "brfd/grid.hpp"
#include "brfd/norms.hpp"

using namespace brfd;

TEST_CASE("mesh geometry and invariants") {
    const Mesh m(-1.5, 2.5, 7);
    CHECK(m.J() == 7);
    CHECK(m.length() == doctest::Approx(4.0));
    CHECK(std::abs(m.h() * (m.J() + 1) - m.length()) <= 1e-14 * m.length());
    CHECK(m.node(0) == -1.5);       // endpoints exact, not recomputed
    CHECK(m.node(8) == 2.5);
    CHECK(m.node(2) == doctest::Approx(-0.5));

    CHECK_THROWS_AS(Mesh(0.0, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(Mesh(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("time grid") {
    const TimeGrid tg(2.0, 8);
    CHECK(tg.tau() == doctest::Approx(0.25));
    CHECK(std::abs(tg.tau() * tg.N() - tg.T()) <= 1e-14 * tg.T());
    CHECK(tg.t(8) == 2.0);
    CHECK(tg.t_half(0) == doctest::Approx(0.125));
    CHECK(tg.t_quarter() == doctest::Approx(0.0625));
    CHECK_THROWS_AS(TimeGrid(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), std::invalid_argument);
}

TEST_CASE("interior grid functions force zero endpoints") {
    const InteriorGridFunction v(std::vector<double>{3.0, 1.0, 2.0, -7.0});
    CHECK(v[0] == 0.0);
    CHECK(v[3] == 0.0);
    CHECK(v[1] == 1.0);
}

TEST_CASE("laplacian stencil examples") {
    const Mesh m(0.0, 1.0, 1);  // h = 1/2
    const InteriorGridFunction v(std::vector<double>{0.0, 1.0, 0.0});
    const InteriorGridFunction lap = laplacian(v, m);
    CHECK(lap[0] == 0.0);
    CHECK(lap[1] == doctest::Approx(-8.0));
    CHECK(lap[2] == 0.0);

    // exact on quadratics: second difference of x(1-x) is -2 at every interior node
    for (int J : {4, 9, 33}) {
        const Mesh mq(0.0, 1.0, J);
        const InteriorGridFunction q =
            sample_interior([](double x) { return x * (1.0 - x); }, mq);
        const InteriorGridFunction lq = laplacian(q, mq);
        for (int j = 1; j <= J; ++j)
            CHECK(lq[static_cast<std::size_t>(j)] == doctest::Approx(-2.0).epsilon(1e-12));
    }

    const InteriorGridFunction zero(m.num_nodes());
    const InteriorGridFunction lz = laplacian(zero, m);
    for (std::size_t j = 0; j < lz.size(); ++j) CHECK(lz[j] == 0.0);

    const Mesh other(0.0, 1.0, 5);
    CHECK_THROWS_AS(laplacian(v, other), std::invalid_argument);
}

TEST_CASE("laplacian is exact on cubics vanishing at the boundary") {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const Mesh m(-0.5, 1.5, 23);
    for (int trial = 0; trial < 20; ++trial) {
        // p = (x - x_a)(x - x_b)(a + b x) has degree 3 and vanishes at both ends
        const double a = coef(rng), b = coef(rng);
        auto p = [&](double x) { return (x - m.x_a()) * (x - m.x_b()) * (a + b * x); };
        // p = (x^2 - sx + q)(a + bx) with s = x_a + x_b, q = x_a x_b
        const double s = m.x_a() + m.x_b(), q = m.x_a() * m.x_b();
        // monomial coefficients: c3 = b, c2 = a - s b, c1 = q b - s a, c0 = q a
        const double c3 = b, c2 = a - s * b;
        auto pxx = [&](double x) { return 6.0 * c3 * x + 2.0 * c2; };
        const InteriorGridFunction lp = laplacian(sample_interior(p, m), m);
        for (int j = 1; j <= m.J(); ++j) {
            const double expected = pxx(m.node(j));
            CHECK(lp[static_cast<std::size_t>(j)] ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("forward difference examples") {
    const Mesh m(0.0, 1.0, 1);
    const StaggeredFunction d = forward_difference(GridFunction(std::vector<double>{0.0, 1.0, 0.0}), m);
    CHECK(d.size() == 2);
    CHECK(d[0] == doctest::Approx(2.0));
    CHECK(d[1] == doctest::Approx(-2.0));

    const Mesh m2(0.0, 2.0, 9);
    const StaggeredFunction dc = forward_difference(GridFunction(m2.num_nodes(), 3.14), m2);
    for (std::size_t j = 0; j < dc.size(); ++j) CHECK(dc[j] == 0.0);

    const StaggeredFunction dx = forward_difference(sample([](double x) { return x; }, m2), m2);
    for (std::size_t j = 0; j < dx.size(); ++j) CHECK(dx[j] == doctest::Approx(1.0));
}

TEST_CASE("laplacian and forward difference are linear") {
    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Mesh m(0.0, 1.0, 31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> a(m.num_nodes()), b(m.num_nodes());
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] = dist(rng);
            b[j] = dist(rng);
        }
        const double alpha = dist(rng), beta = dist(rng);
        const InteriorGridFunction va(a), vb(b);
        std::vector<double> combo(m.num_nodes());
        for (std::size_t j = 0; j < combo.size(); ++j) combo[j] = alpha * va[j] + beta * vb[j];
        const InteriorGridFunction vc(combo);

        const InteriorGridFunction lhs = laplacian(vc, m);
        const InteriorGridFunction la = laplacian(va, m), lb = laplacian(vb, m);
        for (std::size_t j = 0; j < lhs.size(); ++j) {
            const double rhs = alpha * la[j] + beta * lb[j];
            CHECK(std::abs(lhs[j] - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }

        const StaggeredFunction ds = forward_difference(vc, m);
        const StaggeredFunction da = forward_difference(va, m), db = forward_difference(vb, m);
        for (std::size_t j = 0; j < ds.size(); ++j) {
            const double rhs = alpha * da[j] + beta * db[j];
            CHECK(std::abs(ds[j] - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("hadamard product") {
    const GridFunction v(std::vector<double>{1.0, 2.0, 3.0});
    const GridFunction w(std::vector<double>{4.0, 5.0, 6.0});
    const GridFunction p = hadamard(v, w);
    CHECK(p[0] == 4.0);
    CHECK(p[1] == 10.0);
    CHECK(p[2] == 18.0);

    const GridFunction zero(3, 0.0);
    const GridFunction pz = hadamard(v, zero);
    for (std::size_t j = 0; j < 3; ++j) CHECK(pz[j] == 0.0);

    const GridFunction one(3, 1.0);
    CHECK(hadamard(v, one) == v);

    // interior status propagates through either slot
    const InteriorGridFunction vi(std::vector<double>{9.0, 2.0, 9.0});
    const InteriorGridFunction pi = hadamard(vi, w);
    CHECK(pi[0] == 0.0);
    CHECK(pi[1] == 10.0);

    CHECK_THROWS_AS(hadamard(v, GridFunction(4)), std::invalid_argument);
}

TEST_CASE("sampling operators") {
    const Mesh m(0.0, 1.0, 3);
    const GridFunction s = sample([](double x) { return x; }, m);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(0.25));
    CHECK(s[2] == doctest::Approx(0.5));
    CHECK(s[3] == doctest::Approx(0.75));
    CHECK(s[4] == 1.0);

    const InteriorGridFunction si = sample_interior([](double) { return 1.0; }, m);
    CHECK(si[0] == 0.0);
    CHECK(si[1] == 1.0);
    CHECK(si[2] == 1.0);
    CHECK(si[3] == 1.0);
    CHECK(si[4] == 0.0);

    // compatible initial data: both samplers agree
    auto u0 = [](double x) { return std::sin(M_PI * x); };
    const GridFunction full = sample(u0, m);
    const InteriorGridFunction interior = sample_interior(u0, m);
    for (std::size_t j = 0; j < full.size(); ++j)
        CHECK(std::abs(full[j] - interior[j]) <= 1e-15);
}

TEST_CASE("nodewise composition") {
    const GridFunction w(std::vector<double>{0.0, 2.0, 0.0});
    CHECK(compose([](double a) { return a; }, w) == w);

    const GridFunction sq = compose([](double a) { return a * a; }, w);
    CHECK(sq[1] == 4.0);

    const GridFunction diff = compose([](double a, double b) { return a - b; }, w, w);
    for (std::size_t j = 0; j < diff.size(); ++j) CHECK(diff[j] == 0.0);

    CHECK_THROWS_AS(compose([](double a, double b) { return a + b; }, w, GridFunction(5)),
                    std::invalid_argument);
}

TEST_CASE("operations returning interior functions keep exact zero endpoints") {
    std::mt19937_64 rng(13u);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    const Mesh m(0.0, 1.0, 17);
    std::vector<double> raw(m.num_nodes());
    for (double& x : raw) x = dist(rng);
    const InteriorGridFunction v(raw);

    const InteriorGridFunction lap = laplacian(v, m);
    const InteriorGridFunction prod = hadamard(v, sample([](double x) { return x + 2.0; }, m));
    const InteriorGridFunction samp = sample_interior([](double x) { return std::exp(x); }, m);
    for (const InteriorGridFunction* f : {&lap, &prod, &samp}) {
        CHECK((*f)[0] == 0.0);
        CHECK((*f)[f->size() - 1] == 0.0);
    }
}
