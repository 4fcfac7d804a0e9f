#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "drplab/linearization.hpp"
#include "drplab/systems.hpp"

using namespace drp;

namespace {

/// f = -x + u, g = x + 0.5 u without analytic callbacks, to exercise the
/// finite-difference path.
DRPSystem plain_affine(const TimeGrid& grid) {
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector& u, double) -> Vector { return -x + u; };
    sys.g = [](const Vector& x, const Vector& u, double) -> Vector { return x + 0.5 * u; };
    return sys;
}

}  // namespace

TEST_CASE("linear systems linearize to themselves") {
    TimeGrid grid(1.0, 50);
    const LTVQuadruple quad = linearize_at_origin(plain_affine(grid));
    for (Index i = 0; i < grid.nodes(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        CHECK(quad.A[k](0, 0) == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(quad.B[k](0, 0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(quad.C[k](0, 0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(quad.D[k](0, 0) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("Van der Pol linearizes to the hand-derived quadruple") {
    TimeGrid grid(2.0, 100);
    const auto damping = tracking_example_damping();
    const DRPSystem sys = van_der_pol_drp(grid, damping);
    const LTVQuadruple quad = linearize_at_origin(sys);
    for (Index i = 0; i < grid.nodes(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double t = grid.node(i);
        Matrix expected_A(2, 2);
        expected_A << 0.0, 1.0, -1.0, damping(t);
        CHECK((quad.A[k] - expected_A).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(quad.B[k](0, 0) == 0.0);
        CHECK(quad.B[k](1, 0) == 1.0);
        CHECK(quad.C[k](0, 0) == 1.0);
        CHECK(quad.D[k](0, 0) == 0.0);
    }
}

TEST_CASE("cubic output terms vanish from the linearization") {
    TimeGrid grid(1.0, 20);
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector&, double) -> Vector { return -x; };
    sys.g = [](const Vector&, const Vector& u, double) -> Vector {
        return u + u.array().cube().matrix();
    };
    const LTVQuadruple quad = linearize_at_origin(sys);
    for (const Matrix& D : quad.D) CHECK(D(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("analytic and finite-difference Jacobians agree to 1e-6") {
    // Every field in the zoo that supplies callbacks is cross-checked.
    TimeGrid grid(2.0, 40);
    std::vector<DRPSystem> fields;
    fields.push_back(van_der_pol_drp(grid, tracking_example_damping()));
    fields.push_back(scalar_lti_drp(grid, -1.0, 0.7, 0.3, 0.5));
    {
        Rng rng(17);
        fields.push_back(make_ltv_system(random_quadruple(grid, 2, 2, 0.8, rng)));
    }

    for (const DRPSystem& sys : fields) {
        REQUIRE(sys.has_analytic_jacobians());
        const Vector x0 = Vector::Zero(sys.state_dim);
        const Vector u0 = Vector::Zero(sys.io_dim);
        for (Index i = 0; i < grid.nodes(); i += 7) {
            const double t = grid.node(i);
            CHECK((sys.df_dstate(x0, u0, t) - fd_jacobian_state(sys.f, sys.state_dim, x0, u0, t))
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
            CHECK((sys.df_dinput(x0, u0, t) - fd_jacobian_input(sys.f, sys.state_dim, x0, u0, t))
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
            CHECK((sys.dg_dstate(x0, u0, t) - fd_jacobian_state(sys.g, sys.io_dim, x0, u0, t))
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
            CHECK((sys.dg_dinput(x0, u0, t) - fd_jacobian_input(sys.g, sys.io_dim, x0, u0, t))
                      .cwiseAbs()
                      .maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("non-finite Jacobians are reported with time and entry") {
    TimeGrid grid(1.0, 10);
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector&, double t) -> Vector {
        if (t > 0.55) return Vector::Constant(1, std::numeric_limits<double>::quiet_NaN());
        return -x;
    };
    sys.g = [](const Vector& x, const Vector&, double) -> Vector { return x; };
    CHECK_THROWS_AS(linearize_at_origin(sys), LinearizationError);
}

TEST_CASE("residual vanishes identically for linear systems") {
    TimeGrid grid(1.0, 30);
    const DRPSystem sys = plain_affine(grid);
    const LTVQuadruple quad = linearize_at_origin(sys);
    const Signal chi = Signal::from_function(
        grid, 1, [](double t) { return Vector::Constant(1, std::sin(3.0 * t)); });
    const Signal u = Signal::from_function(
        grid, 1, [](double t) { return Vector::Constant(1, std::cos(2.0 * t)); });
    CHECK(sup_norm(residual_phi(sys, quad, chi, u)) <= 1e-9);
}

TEST_CASE("quadratic output residual is exactly c^2") {
    TimeGrid grid(1.0, 25);
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector&, double) -> Vector { return -x; };
    sys.g = [](const Vector&, const Vector& u, double) -> Vector {
        return u + u.cwiseProduct(u);
    };
    const LTVQuadruple quad = linearize_at_origin(sys);
    const double c = 1e-3;
    const Signal chi(grid, 1);
    const Signal u = Signal::constant(grid, Vector::Constant(1, c));
    const Signal phi = residual_phi(sys, quad, chi, u);
    for (Index i = 0; i < grid.nodes(); ++i) {
        CHECK(phi.sample(i)[0] == doctest::Approx(0.0).epsilon(1e-12));  // b component
        CHECK(phi.sample(i)[1] == doctest::Approx(c * c).epsilon(1e-6));
    }
}

TEST_CASE("Van der Pol residual is the cubic damping term") {
    TimeGrid grid(2.0, 60);
    const auto damping = tracking_example_damping();
    const DRPSystem sys = van_der_pol_drp(grid, damping);
    const LTVQuadruple quad = linearize_at_origin(sys);

    const Signal chi = Signal::from_function(grid, 2, [](double t) {
        return Vector{{0.3 * std::sin(t), 0.2 * std::cos(2.0 * t)}};
    });
    const Signal u = Signal::from_function(
        grid, 1, [](double t) { return Vector::Constant(1, 0.1 * std::sin(5.0 * t)); });
    const Signal phi = residual_phi(sys, quad, chi, u);

    for (Index i = 0; i < grid.nodes(); ++i) {
        const double t = grid.node(i);
        const double q1 = chi.sample(i)[0];
        const double q2 = chi.sample(i)[1];
        CHECK(std::abs(phi.sample(i)[0]) < 1e-10);
        CHECK(phi.sample(i)[1] ==
              doctest::Approx(damping(t) * (-q1 * q1 * q2)).epsilon(1e-10));
        CHECK(std::abs(phi.sample(i)[2]) < 1e-10);  // output map is exactly linear
    }
}

TEST_CASE("residual ladder: linear system has zero ratios") {
    TimeGrid grid(1.0, 40);
    const DRPSystem sys = plain_affine(grid);
    const LTVQuadruple quad = linearize_at_origin(sys);
    const auto rows = check_residual_asymptotics(sys, quad, {1e-1, 1e-2, 1e-3}, 6, 31);
    for (const auto& row : rows) CHECK(row.max_ratio < 1e-8);
}

TEST_CASE("residual ladder: quadratic output scales linearly") {
    TimeGrid grid(1.0, 40);
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector& u, double) -> Vector { return -x + u; };
    sys.g = [](const Vector&, const Vector& u, double) -> Vector {
        return u + u.cwiseProduct(u);
    };
    const LTVQuadruple quad = linearize_at_origin(sys);
    const auto rows = check_residual_asymptotics(sys, quad, {1e-1, 1e-2, 1e-3}, 8, 7);
    CHECK(ladder_non_increasing(rows));
    // Quadratic residual over a linear denominator: one decade of scale
    // costs about a decade of ratio.
    CHECK(rows[1].max_ratio <= 0.3 * rows[0].max_ratio);
    CHECK(rows[2].max_ratio <= 0.3 * rows[1].max_ratio);
}

TEST_CASE("residual ladder on Van der Pol decreases over the decade ladder") {
    // A pass short enough that the scale-1e-1 ball stays inside the
    // near-linear region: over [0, 2] the unforced dynamics amplifies data
    // by ~e^7.5 and the probes saturate on the limit cycle instead.
    TimeGrid grid(0.5, 500);
    const DRPSystem sys = van_der_pol_drp(grid, tracking_example_damping());
    const LTVQuadruple quad = linearize_at_origin(sys);
    const auto rows = check_residual_asymptotics(sys, quad, {1e-1, 1e-2, 1e-3}, 8, 2024);
    CHECK(ladder_non_increasing(rows));
    CHECK(rows.back().max_ratio < rows.front().max_ratio);
    // The residual is cubic, so each decade of scale gains about two
    // decades of ratio.
    CHECK(rows[1].max_ratio <= 0.05 * rows[0].max_ratio);
}

TEST_CASE("residual dimension mismatches are rejected") {
    TimeGrid grid(1.0, 10);
    const DRPSystem sys = plain_affine(grid);
    const LTVQuadruple quad = linearize_at_origin(sys);
    CHECK_THROWS_AS(residual_phi(sys, quad, Signal(grid, 2), Signal(grid, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_residual_asymptotics(sys, quad, {1e-3, 1e-2}, 4, 0),
                    std::domain_error);
}
