// Feedback gains and the control policies the simulation engine understands.
// Kept separate from control.hpp so the engine does not depend on the
// state-space machinery it is driven by.
#ifndef IMPACT_FEEDBACK_HPP
#define IMPACT_FEEDBACK_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "impact/types.hpp"

namespace impact {

// State feedback row vector sigma together with the closed-loop poles it was
// built for. delta holds the elementary-symmetric coefficients of the target
// characteristic polynomial phi^3 + delta1 phi^2 + delta2 phi + delta3.
struct FeedbackGain {
    Eigen::RowVector3d sigma = Eigen::RowVector3d::Zero();
    std::array<std::complex<Real>, 3> phi{};
    Eigen::Vector3d delta = Eigen::Vector3d::Zero();
    Real max_abs_phi = 0.0;
    bool stable = false;
};

struct ControlPolicy {
    enum class Kind { Null, QuickResponse };

    Kind kind = Kind::Null;
    FeedbackGain gain;
    // Order flow with magnitude above this threshold wakes the controller.
    Real trigger_tol = 1e-9;

    static ControlPolicy null() { return {}; }
};

// Wraps a stable gain into the policy that stays flat until the first
// nonzero order and applies full state feedback ever after. Throws
// std::invalid_argument for gains with a closed-loop pole on or outside the
// unit circle.
ControlPolicy quick_response_control(const FeedbackGain& gain, Real trigger_tol = 1e-9);

}  // namespace impact

#endif
