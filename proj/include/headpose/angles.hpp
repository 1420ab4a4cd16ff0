#pragma once

#include <Eigen/Dense>
#include <span>

namespace headpose {

using RotationMatrix = Eigen::Matrix3d;

/// Wrap an angle in degrees into (-180, 180]. Throws NumericalError on non-finite input.
double wrap_angle(double theta_deg);

/// Head orientation as pitch (x), yaw (y), roll (z) Euler angles in degrees.
///
/// Convention: intrinsic rotations applied pitch-then-yaw-then-roll, i.e. the
/// matrix product R = Rx(pitch) * Ry(yaw) * Rz(roll) acting on column vectors,
/// right-handed axes. Yaw is the middle (gimbal-lock) axis, so full-circle yaw
/// is representable while pitch stays in [-90, 90] in canonical form.
struct EulerPose {
    double pitch = 0.0;
    double yaw = 0.0;
    double roll = 0.0;

    /// Canonical equivalent pose: all angles wrapped to (-180, 180]; when
    /// |pitch| > 90 the identity (p, y, r) == (p+180, 180-y, r+180) is applied
    /// so that pitch lands in [-90, 90]. Idempotent.
    [[nodiscard]] EulerPose normalized() const;
};

RotationMatrix euler_to_matrix(const EulerPose& pose);

/// Recover the canonical Euler pose from a rotation matrix.
///
/// At gimbal lock (|sin(yaw)| within 1e-7 of 1) the split between pitch and
/// roll is not observable; the tie-break sets roll = 0 and folds the residual
/// rotation into pitch. Throws NumericalError if R is not orthonormal with
/// det +1 within 1e-6.
EulerPose matrix_to_euler(const RotationMatrix& rotation);

/// Absolute wrapped error min(|d|, 360 - |d|) in degrees, d = pred - truth. Range [0, 180].
double awe(double pred_deg, double true_deg);

/// Arithmetic mean of elementwise awe. Throws on empty or mismatched spans.
double mawe(std::span<const double> pred_deg, std::span<const double> true_deg);

inline constexpr double kDegPerRad = 57.29577951308232087680;

inline double deg_to_rad(double deg) { return deg / kDegPerRad; }
inline double rad_to_deg(double rad) { return rad * kDegPerRad; }

}  // namespace headpose
