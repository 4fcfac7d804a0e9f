#include "drplab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drp {

namespace {

void require_common_dim(const std::vector<Vector>& items) {
    if (items.empty()) throw std::domain_error("VectorSequence: empty sequence");
    const Index dim = items.front().size();
    for (const auto& v : items)
        if (v.size() != dim) throw std::invalid_argument("VectorSequence: mixed dimensions");
}

}  // namespace

VectorSequence VectorSequence::arbitrary(std::vector<Vector> items) {
    require_common_dim(items);
    VectorSequence seq;
    seq.items_ = std::move(items);
    seq.class_ = SequenceClass::arbitrary;
    seq.limit_ = Vector::Zero(seq.dim());
    return seq;
}

VectorSequence VectorSequence::zero(Index dim, Index count) {
    return constant(Vector::Zero(dim), count);
}

VectorSequence VectorSequence::constant(const Vector& value, Index count) {
    if (count < 1) throw std::domain_error("VectorSequence: need at least one item");
    return arbitrary(std::vector<Vector>(static_cast<std::size_t>(count), value));
}

VectorSequence VectorSequence::e_lambda_random(Index count, double lambda, double norm_bound,
                                               Vector limit, Rng& rng) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("e_lambda_random: lambda must lie in (0,1)");
    if (!(norm_bound >= 0.0)) throw std::domain_error("e_lambda_random: negative norm bound");
    if (count < 1) throw std::domain_error("VectorSequence: need at least one item");

    const Index dim = limit.size();
    std::vector<Vector> deviations;
    deviations.reserve(static_cast<std::size_t>(count));
    double weight = 1.0;
    double scale = 0.0;  // e_lambda norm of the raw deviations
    for (Index k = 0; k < count; ++k) {
        // Two generator calls: keep them in separate statements so the
        // stream order does not depend on expression evaluation order.
        const double amplitude = rng.uniform(0.2, 1.0);
        const Vector dev = amplitude * weight * rng.unit_sphere(dim);
        scale = std::max(scale, max_abs(dev) / weight);
        deviations.push_back(dev);
        weight *= lambda;
    }

    VectorSequence seq;
    seq.items_.reserve(deviations.size());
    const double rescale = (scale > 0.0 && norm_bound > 0.0) ? norm_bound / scale : 0.0;
    for (const auto& dev : deviations) seq.items_.push_back(limit + rescale * dev);
    seq.class_ = SequenceClass::e_lambda;
    seq.lambda_ = lambda;
    seq.norm_bound_ = norm_bound;
    seq.limit_ = std::move(limit);
    return seq;
}

VectorSequence VectorSequence::c0_random(Index count, double amplitude, Vector limit, Rng& rng) {
    if (count < 1) throw std::domain_error("VectorSequence: need at least one item");
    const Index dim = limit.size();
    VectorSequence seq;
    seq.items_.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k)
        seq.items_.push_back(limit + (amplitude / static_cast<double>(k + 1)) *
                                         rng.unit_sphere(dim));
    seq.class_ = SequenceClass::c0;
    seq.limit_ = std::move(limit);
    return seq;
}

VectorSequence VectorSequence::drop(Index kappa) const {
    if (kappa < 0 || kappa >= size())
        throw std::domain_error("VectorSequence::drop: kappa out of range");
    VectorSequence seq;
    seq.items_.assign(items_.begin() + kappa, items_.end());
    seq.class_ = class_;
    seq.lambda_ = lambda_;
    // Dropping kappa items tightens the certified bound by lambda^kappa.
    seq.norm_bound_ = norm_bound_ * std::pow(lambda_, static_cast<double>(kappa));
    seq.limit_ = limit_;
    return seq;
}

VectorSequence VectorSequence::translated(const Vector& offset) const {
    if (offset.size() != dim())
        throw std::invalid_argument("VectorSequence::translated: dimension mismatch");
    VectorSequence seq(*this);
    for (auto& item : seq.items_) item += offset;
    seq.limit_ += offset;
    return seq;
}

double e_lambda_norm(const VectorSequence& b, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::domain_error("e_lambda_norm: lambda must lie in (0,1]");
    double norm = 0.0;
    double weight = 1.0;  // lambda^{-k}, grown multiplicatively
    for (Index k = 0; k < b.size(); ++k) {
        norm = std::max(norm, weight * max_abs(b.item(k)));
        weight /= lambda;
    }
    return norm;
}

std::vector<double> forced_geometric_recursion(double r, double a0, std::span<const double> b) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("forced_geometric_recursion: r must lie in (0,1)");
    if (!(a0 >= 0.0)) throw std::domain_error("forced_geometric_recursion: a0 must be >= 0");
    std::vector<double> a;
    a.reserve(b.size() + 1);
    a.push_back(a0);
    for (double forcing : b) {
        if (!(forcing >= 0.0)) throw std::domain_error("forced_geometric_recursion: negative forcing term");
        a.push_back(r * a.back() + forcing);
    }
    return a;
}

double approx_limsup(std::span<const double> values, double tail_fraction) {
    if (values.empty()) throw std::domain_error("approx_limsup: empty sequence");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw std::domain_error("approx_limsup: tail fraction must lie in (0,1]");
    const std::size_t tail =
        std::max<std::size_t>(1, static_cast<std::size_t>(tail_fraction * values.size()));
    return *std::max_element(values.end() - tail, values.end());
}

double forced_recursion_limsup_bound(double r, std::span<const double> b, double tail_fraction) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("forced_recursion_limsup_bound: r must lie in (0,1)");
    return approx_limsup(b, tail_fraction) / (1.0 - r);
}

DominationSides geometric_domination_bound(double a, Index k) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("geometric_domination_bound: a must lie in (0,1)");
    if (k < 0) throw std::domain_error("geometric_domination_bound: k must be >= 0");
    DominationSides sides;
    sides.lhs = (k == 0) ? 0.0
                         : static_cast<double>(k) * std::pow(a, static_cast<double>(k - 1));
    sides.rhs = (2.0 / (1.0 - a)) * std::pow((1.0 + a) / 2.0, static_cast<double>(k));
    return sides;
}

}  // namespace drp
