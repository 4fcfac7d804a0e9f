#include "drplab/drp_system.hpp"

#include <stdexcept>
#include <string>

namespace drp {

void validate_origin_anchor(const DRPSystem& sys) {
    if (!sys.origin_anchored)
        throw std::logic_error("validate_origin_anchor: system not declared origin-anchored");
    const Vector zero_state = Vector::Zero(sys.state_dim);
    const Vector zero_input = Vector::Zero(sys.io_dim);
    for (Index i = 0; i < sys.grid.nodes(); ++i) {
        const double t = sys.grid.node(i);
        if (max_abs(sys.f(zero_state, zero_input, t)) > 1e-12 ||
            max_abs(sys.g(zero_state, zero_input, t)) > 1e-12)
            throw std::logic_error("origin anchor violated at grid node " + std::to_string(i));
    }
}

}  // namespace drp
