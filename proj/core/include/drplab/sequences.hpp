#pragma once

#include <span>
#include <vector>

#include "drplab/rng.hpp"
#include "drplab/types.hpp"

namespace drp {

/// Decay class declared at construction. Membership is enforced by the
/// generator, not tested post hoc: an infinite sequence is represented by a
/// finite prefix plus this tag.
enum class SequenceClass { arbitrary, c0, e_lambda };

/// Finite prefix of a sequence {b_{k+1}}_{k>=0} of vectors of a common
/// dimension. item(k) is b_{k+1}.
class VectorSequence {
public:
    static VectorSequence arbitrary(std::vector<Vector> items);
    static VectorSequence zero(Index dim, Index count);
    static VectorSequence constant(const Vector& value, Index count);

    /// Seeded random sequence whose deviation from `limit` has e_lambda norm
    /// exactly `norm_bound`: items are limit + a_k * lambda^k * dir_k with
    /// directions uniform on the unit sphere and amplitudes rescaled so that
    /// sup_k lambda^{-k} max_abs(item_k - limit) == norm_bound.
    static VectorSequence e_lambda_random(Index count, double lambda, double norm_bound,
                                          Vector limit, Rng& rng);

    /// Seeded c0 sequence converging to `limit` at harmonic rate 1/(k+1)
    /// (in c0 but in no e_lambda, lambda < 1).
    static VectorSequence c0_random(Index count, double amplitude, Vector limit, Rng& rng);

    Index size() const noexcept { return static_cast<Index>(items_.size()); }
    Index dim() const noexcept { return items_.empty() ? 0 : items_.front().size(); }
    const Vector& item(Index k) const { return items_.at(static_cast<std::size_t>(k)); }
    const std::vector<Vector>& items() const noexcept { return items_; }

    SequenceClass declared_class() const noexcept { return class_; }
    double lambda() const noexcept { return lambda_; }
    double norm_bound() const noexcept { return norm_bound_; }
    const Vector& limit() const noexcept { return limit_; }

    /// Shift property helper: the tail {b_{k+1}}_{k>=kappa}.
    VectorSequence drop(Index kappa) const;

    /// Same items translated by `offset`; the declared class is preserved
    /// with the limit translated accordingly.
    VectorSequence translated(const Vector& offset) const;

private:
    VectorSequence() = default;

    std::vector<Vector> items_;
    SequenceClass class_ = SequenceClass::arbitrary;
    double lambda_ = 1.0;
    double norm_bound_ = 0.0;
    Vector limit_;
};

/// Exponential-lambda norm over the stored prefix: sup_k lambda^{-k}
/// max_abs(b_{k+1}). lambda must lie in (0, 1]; e_1 is the plain sup norm.
double e_lambda_norm(const VectorSequence& b, double lambda);

/// Rolls out a_{k+1} = r*a_k + b_{k+1} from a_0 = a0. Requires r in (0, 1)
/// and nonnegative forcing terms. Returns {a_0, ..., a_len(b)}.
std::vector<double> forced_geometric_recursion(double r, double a0, std::span<const double> b);

/// The asymptotic bound limsup a <= (1/(1-r)) limsup b exposed for test
/// harnesses, with limsup approximated by the max over the trailing
/// `tail_fraction` of the stored prefix.
double forced_recursion_limsup_bound(double r, std::span<const double> b, double tail_fraction = 0.25);

/// Max over the trailing fraction of a sequence; the library-wide stand-in
/// for limsup on finite prefixes.
double approx_limsup(std::span<const double> values, double tail_fraction = 0.25);

struct DominationSides {
    double lhs;  // k * a^(k-1)
    double rhs;  // (2/(1-a)) * ((1+a)/2)^k
};

/// Both sides of the geometric domination of k*a^(k-1); lhs <= rhs holds for
/// every a in (0,1) and k >= 0.
DominationSides geometric_domination_bound(double a, Index k);

}  // namespace drp
