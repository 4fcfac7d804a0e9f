#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "drplab/sequences.hpp"
#include "drplab/signal.hpp"

using namespace drp;

namespace {
constexpr double pi = 3.141592653589793;
}

TEST_CASE("time grid basics") {
    TimeGrid grid(2.0, 200);
    CHECK(grid.nodes() == 201);
    CHECK(grid.step() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(grid.node(200) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(grid.step() * 200 - 2.0) <= 1e-14);

    CHECK_THROWS_AS(TimeGrid(0.0, 10), std::domain_error);
    CHECK_THROWS_AS(TimeGrid(-1.0, 10), std::domain_error);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), std::domain_error);
}

TEST_CASE("sup norm") {
    TimeGrid grid(1.0, 10);

    CHECK(sup_norm(Signal(grid, 2)) == 0.0);
    CHECK(sup_norm(Signal::constant(grid, Vector{{1.0, -2.0}})) == 2.0);

    // Sampled sine: the analytic max is 1, grid resolution error O(h^2).
    TimeGrid fine(1.0, 1000);
    const Signal sine = Signal::from_function(
        fine, 1, [](double t) { return Vector::Constant(1, std::sin(2.0 * pi * t)); });
    CHECK(sup_norm(sine) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("signal arithmetic and stacking") {
    TimeGrid grid(1.0, 4);
    const Signal a = Signal::constant(grid, Vector{{1.0}});
    const Signal b = Signal::constant(grid, Vector{{3.0}});
    CHECK(sup_norm(a - b) == 2.0);
    CHECK(sup_norm(a + b) == 4.0);
    CHECK(vstack(a, b).dim() == 2);
    CHECK(vstack(a, b).sample(2)[1] == 3.0);

    TimeGrid other(1.0, 5);
    CHECK_THROWS_AS(a + Signal::constant(other, Vector{{1.0}}), std::invalid_argument);
}

TEST_CASE("interpolation is exact at nodes and averages at half steps") {
    TimeGrid grid(1.0, 4);
    const Signal s = Signal::from_function(
        grid, 1, [](double t) { return Vector::Constant(1, 1.0 + 2.0 * t); });
    CHECK(interpolate(s, grid.node(2))[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(interpolate(s, 0.125)[0] == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("e_lambda norm definition cases") {
    // b_{k+1} = lambda^k v has norm exactly max_abs(v).
    const double lambda = 0.7;
    const Vector v{{2.0, -3.0}};
    std::vector<Vector> items;
    for (int k = 0; k < 30; ++k) items.push_back(std::pow(lambda, k) * v);
    const auto profile = VectorSequence::arbitrary(items);
    CHECK(e_lambda_norm(profile, lambda) == doctest::Approx(3.0).epsilon(1e-12));

    // e_1 is the plain sup norm of the sequence.
    CHECK(e_lambda_norm(profile, 1.0) == doctest::Approx(3.0).epsilon(1e-12));

    // Two-term direct evaluation.
    const auto two = VectorSequence::arbitrary(
        {Vector::Constant(1, 1.0), Vector::Constant(1, 0.25)});
    CHECK(e_lambda_norm(two, 0.5) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(e_lambda_norm(two, 0.0), std::domain_error);
    CHECK_THROWS_AS(e_lambda_norm(two, 1.5), std::domain_error);
}

TEST_CASE("e_lambda generator enforces its declared bound") {
    Rng rng(42);
    const auto seq =
        VectorSequence::e_lambda_random(40, 0.6, 0.09, Vector{{0.1, 0.0}}, rng);
    double weight = 1.0;
    double achieved = 0.0;
    for (Index k = 0; k < seq.size(); ++k) {
        const double dev = max_abs(Vector(seq.item(k) - seq.limit()));
        CHECK(dev <= 0.09 * weight * (1.0 + 1e-12));
        achieved = std::max(achieved, dev / weight);
        weight *= 0.6;
    }
    // The rescaling makes the deviation norm exactly the declared bound.
    CHECK(achieved == doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("shift property") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const double lambda = rng.uniform(0.05, 1.0);
        const Index count = 3 + static_cast<Index>(rng.uniform() * 20);
        std::vector<Vector> items;
        for (Index k = 0; k < count; ++k) {
            const Vector direction = rng.uniform_vector(2, -1.0, 1.0);
            items.push_back(direction * std::pow(rng.uniform(0.2, 1.0), static_cast<double>(k)));
        }
        const auto seq = VectorSequence::arbitrary(items);
        const Index kappa = static_cast<Index>(rng.uniform() * static_cast<double>(count - 1));
        const double full = e_lambda_norm(seq, lambda);
        const double tail = e_lambda_norm(seq.drop(kappa), lambda);
        CHECK(tail <= std::pow(lambda, static_cast<double>(kappa)) * full * (1.0 + 1e-9) + 1e-300);
    }
}

TEST_CASE("lambda monotonicity") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const Index count = 2 + static_cast<Index>(rng.uniform() * 15);
        std::vector<Vector> items;
        for (Index k = 0; k < count; ++k) items.push_back(rng.uniform_vector(3, -2.0, 2.0));
        const auto seq = VectorSequence::arbitrary(items);
        double l1 = rng.uniform(0.05, 1.0);
        double l2 = rng.uniform(0.05, 1.0);
        if (l1 > l2) std::swap(l1, l2);
        CHECK(e_lambda_norm(seq, l2) <= e_lambda_norm(seq, l1) * (1.0 + 1e-9));
    }
}

TEST_CASE("forced geometric recursion rollouts") {
    // Zero forcing: pure geometric decay.
    const std::vector<double> zeros(40, 0.0);
    const auto geometric = forced_geometric_recursion(0.5, 1.0, zeros);
    for (std::size_t k = 0; k < geometric.size(); ++k)
        CHECK(geometric[k] == doctest::Approx(std::pow(0.5, static_cast<double>(k))).epsilon(1e-12));

    // Geometric forcing 0.9^k decays to zero; the rollout itself is the
    // oracle. The envelope is ~2.25*0.9^k, which first dips below 1e-6
    // around k = 140, and the iteration is monotone down after the cross.
    std::vector<double> forcing;
    for (int k = 0; k < 160; ++k) forcing.push_back(std::pow(0.9, k));
    const auto decaying = forced_geometric_recursion(0.5, 1.0, forcing);
    CHECK(decaying[60] < 5e-3);
    CHECK(decaying[60] > 1e-6);
    CHECK(decaying.back() < 1e-6);

    // Constant forcing c: fixed point a = r a + c = 2c at r = 0.5.
    const std::vector<double> constant(200, 0.3);
    const auto saturating = forced_geometric_recursion(0.5, 0.0, constant);
    CHECK(saturating.back() == doctest::Approx(0.6).epsilon(1e-12));

    CHECK_THROWS_AS(forced_geometric_recursion(1.0, 0.0, zeros), std::domain_error);
    CHECK_THROWS_AS(forced_geometric_recursion(0.0, 0.0, zeros), std::domain_error);
}

TEST_CASE("limsup bound holds on bounded oscillating forcings") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = rng.uniform(0.05, 0.95);
        const double level = rng.uniform(0.1, 2.0);
        std::vector<double> forcing;
        for (int k = 0; k < 400; ++k)
            forcing.push_back(level * (0.5 + 0.5 * std::abs(std::sin(0.7 * k)) * rng.uniform()));
        const auto rollout = forced_geometric_recursion(r, rng.uniform(0.0, 3.0), forcing);
        CHECK(approx_limsup(rollout) <= forced_recursion_limsup_bound(r, forcing) * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("decaying forcing drives the recursion to zero") {
    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = rng.uniform(0.05, 0.95);
        const double mu = rng.uniform(0.3, 0.99);
        std::vector<double> forcing;
        for (int k = 0; k < 400; ++k)
            forcing.push_back(rng.uniform(0.0, 1.0) * std::pow(mu, k));
        const auto rollout = forced_geometric_recursion(r, rng.uniform(0.0, 2.0), forcing);
        // Tail below epsilon once the rollout is long enough.
        CHECK(rollout.back() < 1e-6 + 10.0 * std::pow(std::max(r, mu), 390));
        CHECK(rollout.back() <= 0.5 * *std::max_element(rollout.begin(), rollout.end()) + 1e-12);
    }
}

TEST_CASE("geometric domination bound values and property") {
    const auto sides = geometric_domination_bound(0.5, 3);
    CHECK(sides.lhs == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(sides.rhs == doctest::Approx(1.6875).epsilon(1e-14));

    const auto zero = geometric_domination_bound(0.3, 0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == doctest::Approx(2.0 / 0.7).epsilon(1e-14));

    const auto large = geometric_domination_bound(0.9, 50);
    CHECK(large.lhs <= large.rhs);

    CHECK_THROWS_AS(geometric_domination_bound(1.0, 3), std::domain_error);
    CHECK_THROWS_AS(geometric_domination_bound(0.0, 3), std::domain_error);

    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = rng.uniform(0.001, 0.999);
        const Index k = static_cast<Index>(rng.uniform() * 500.0);
        const auto s = geometric_domination_bound(a, k);
        CHECK(s.lhs <= s.rhs);
    }
}
