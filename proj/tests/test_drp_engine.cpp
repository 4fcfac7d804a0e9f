#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "drplab/drp_engine.hpp"
#include "drplab/ltv_analysis.hpp"
#include "drplab/systems.hpp"

using namespace drp;

namespace {

BoundarySpec unit_boundary(const TimeGrid& grid, Index n, Index passes) {
    return {Signal::constant(grid, Vector::Constant(1, 1.0)),
            VectorSequence::zero(n, passes)};
}

}  // namespace

TEST_CASE("zero boundaries stay at zero") {
    TimeGrid grid(2.0, 200);
    const DRPSystem sys = van_der_pol_drp(grid, tracking_example_damping());
    const RunRecord rec =
        run_drp(sys, {Signal(grid, 1), VectorSequence::zero(2, 10)}, 10);
    for (double norm : rec.output_norms) CHECK(norm == 0.0);
    CHECK_FALSE(rec.escape_pass.has_value());
}

TEST_CASE("memoryless gain halves the profile every pass") {
    TimeGrid grid(1.0, 50);
    const DRPSystem sys = memoryless_scalar_drp(grid, 0.5);
    const RunRecord rec = run_drp(sys, unit_boundary(grid, 1, 20), 20);
    REQUIRE(rec.output_norms.size() == 21);
    for (std::size_t k = 0; k < rec.output_norms.size(); ++k)
        CHECK(rec.output_norms[k] ==
              doctest::Approx(std::pow(0.5, static_cast<double>(k))).epsilon(1e-12));
    CHECK(rec.fitted_gamma.has_value());
    CHECK(*rec.fitted_gamma == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("growth beyond tenfold shows up within 50 passes at gain 1.2") {
    TimeGrid grid(1.0, 50);
    const DRPSystem sys = memoryless_scalar_drp(grid, 1.2);
    const RunRecord rec = run_drp(sys, unit_boundary(grid, 1, 50), 50);
    bool grew = false;
    for (double norm : rec.output_norms)
        if (norm > 10.0 * rec.output_norms.front()) grew = true;
    CHECK(grew);
    CHECK(rec.fitted_gamma.has_value());
    CHECK(*rec.fitted_gamma > 1.0);
}

TEST_CASE("observer sees every pass, with no state at pass zero") {
    TimeGrid grid(1.0, 20);
    const DRPSystem sys = memoryless_scalar_drp(grid, 0.5);
    Index calls = 0;
    Index null_states = 0;
    RunOptions options;
    options.observer = [&](Index k, const Signal& y, const Signal* state) {
        CHECK(k == calls);
        CHECK(y.dim() == 1);
        if (state == nullptr) ++null_states;
        ++calls;
    };
    options.keep_last = 3;
    const RunRecord rec = run_drp(sys, unit_boundary(grid, 1, 5), 5, options);
    CHECK(calls == 6);
    CHECK(null_states == 1);
    // The stored-signal ring keeps only the most recent passes.
    CHECK(rec.last_outputs.size() == 3);
    CHECK(sup_norm(rec.last_outputs.back()) == doctest::Approx(std::pow(0.5, 5)));
}

TEST_CASE("escape is recorded, not thrown") {
    TimeGrid grid(1.0, 100);
    DRPSystem sys;
    sys.grid = grid;
    sys.state_dim = 1;
    sys.io_dim = 1;
    sys.f = [](const Vector& x, const Vector& u, double) -> Vector {
        return x.cwiseProduct(x) + u;
    };
    sys.g = [](const Vector& x, const Vector&, double) -> Vector { return 3.0 * x; };

    BoundarySpec boundary{Signal::constant(grid, Vector::Constant(1, 2.0)),
                          VectorSequence::constant(Vector::Constant(1, 2.0), 10)};
    const RunRecord rec = run_drp(sys, boundary, 10);
    REQUIRE(rec.escape_pass.has_value());
    CHECK(*rec.escape_pass >= 1);
    CHECK(rec.output_norms.size() == static_cast<std::size_t>(*rec.escape_pass));
    CHECK_FALSE(rec.fitted_gamma.has_value());
}

TEST_CASE("rate fit on an exact geometric run") {
    RunRecord rec;
    rec.boundary_scale = 1.0;
    for (int k = 0; k <= 30; ++k) rec.output_norms.push_back(std::pow(0.5, k));
    const RateFit fit = estimate_rate(rec);
    CHECK_FALSE(fit.deadbeat);
    CHECK(fit.gamma_hat == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.K_hat == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rate fit flags deadbeat runs") {
    RunRecord rec;
    rec.boundary_scale = 1.0;
    rec.output_norms = {1.0, 0.5, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const RateFit fit = estimate_rate(rec);
    CHECK(fit.deadbeat);
    CHECK(fit.gamma_hat == 0.0);
}

TEST_CASE("rate fit needs a long enough tail") {
    RunRecord rec;
    rec.boundary_scale = 1.0;
    rec.output_norms = {1.0, 0.5, 0.25, 0.125};
    CHECK_THROWS_AS(estimate_rate(rec), std::domain_error);
}

TEST_CASE("rate fit on a stable LTV run lands near the certificate alpha") {
    TimeGrid grid(1.0, 100);
    const auto quad = constant_quadruple(
        grid, -Matrix::Identity(1, 1), 0.3 * Matrix::Identity(1, 1),
        0.3 * Matrix::Identity(1, 1), 0.5 * Matrix::Identity(1, 1));
    const RunRecord rec = run_drp(make_ltv_system(quad), unit_boundary(grid, 1, 40), 40);
    REQUIRE(rec.fitted_gamma.has_value());
    CHECK(*rec.fitted_gamma >= 0.4);
    CHECK(*rec.fitted_gamma <= 0.6);
}

TEST_CASE("exponential-boundary response follows max(alpha, lambda)") {
    TimeGrid grid(1.0, 100);
    const auto quad = constant_quadruple(
        grid, -Matrix::Identity(1, 1), 0.5 * Matrix::Identity(1, 1),
        0.5 * Matrix::Identity(1, 1), 0.5 * Matrix::Identity(1, 1));
    const double alpha = alpha_certificate(quad).alpha;
    Rng rng(13);
    const double lambda = 0.9;
    BoundarySpec boundary{
        Signal::constant(grid, Vector::Constant(1, 0.5)),
        VectorSequence::e_lambda_random(60, lambda, 1.0, Vector::Zero(1), rng)};
    const RunRecord rec = run_drp(make_ltv_system(quad), boundary, 60);
    REQUIRE(rec.fitted_gamma.has_value());
    CHECK(*rec.fitted_gamma <= std::max(alpha, lambda) * 1.1 + 0.05);
}

TEST_CASE("exp bound checker") {
    TimeGrid grid(1.0, 10);
    const DRPSystem sys = memoryless_scalar_drp(grid, 0.5);
    const BoundarySpec boundary = unit_boundary(grid, 1, 20);
    const RunRecord rec = run_drp(sys, boundary, 20);

    auto constant = [](double value) {
        return std::function<double(double)>([value](double) { return value; });
    };
    CHECK(check_exp_bound(rec, boundary, constant(1.0), constant(0.5), 0.5));
    CHECK_FALSE(check_exp_bound(rec, boundary, constant(1.0), constant(0.4), 0.5));

    // A zero run satisfies any admissible envelope.
    const RunRecord zero_rec =
        run_drp(sys, {Signal(grid, 1), VectorSequence::zero(1, 5)}, 5);
    CHECK(check_exp_bound(zero_rec, {Signal(grid, 1), VectorSequence::zero(1, 5)},
                          constant(1.0), constant(0.9), 0.5));

    CHECK_THROWS_AS(check_exp_bound(rec, boundary, constant(0.5), constant(0.5), 0.5),
                    std::domain_error);
}

TEST_CASE("lyapunov functional values on memoryless gains") {
    TimeGrid grid(1.0, 30);
    const DRPSystem sys = memoryless_scalar_drp(grid, 0.5);
    const auto V = build_lyapunov_functional(zero_state_pass_map(sys), 3);

    CHECK(V(Signal(grid, 1)) == 0.0);
    CHECK(V(Signal::constant(grid, Vector::Constant(1, 1.0))) ==
          doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("lyapunov decrease holds at gain 0.5 and fails at 1.2") {
    TimeGrid grid(1.0, 30);

    const DRPSystem stable = memoryless_scalar_drp(grid, 0.5);
    const auto stable_map = zero_state_pass_map(stable);
    const auto V2 = build_lyapunov_functional(stable_map, 2);
    const LyapunovCheck good = lyapunov_decrease_check(V2, stable_map, 24, 0.5, 17, grid, 1);
    CHECK(good.pass);
    CHECK(good.c3 >= 0.25);
    CHECK(good.c2 > good.c3);
    CHECK(good.c1 >= 1.0);

    const DRPSystem unstable = memoryless_scalar_drp(grid, 1.2);
    const auto unstable_map = zero_state_pass_map(unstable);
    const auto Vu = build_lyapunov_functional(unstable_map, 2);
    const LyapunovCheck bad = lyapunov_decrease_check(Vu, unstable_map, 24, 0.5, 17, grid, 1);
    CHECK_FALSE(bad.pass);
    CHECK(bad.c3 <= 0.0);
}

TEST_CASE("lyapunov decrease on the zero map gives c3 = 1") {
    TimeGrid grid(1.0, 30);
    const DRPSystem sys = memoryless_scalar_drp(grid, 0.0);
    const auto map = zero_state_pass_map(sys);
    const auto V = build_lyapunov_functional(map, 3);
    const LyapunovCheck check = lyapunov_decrease_check(V, map, 16, 1.0, 5, grid, 1);
    CHECK(check.pass);
    CHECK(check.c3 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run record serializes to a three-column CSV") {
    TimeGrid grid(1.0, 10);
    const RunRecord rec =
        run_drp(memoryless_scalar_drp(grid, 0.5), unit_boundary(grid, 1, 3), 3);
    const std::string csv = rec.to_csv();
    CHECK(csv.rfind("k,output_sup_norm,state_sup_norm\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find("2,0.25,") != std::string::npos);
}
