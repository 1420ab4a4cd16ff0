#include "headpose/angles.hpp"

#include <cmath>
#include <stdexcept>

#include "headpose/errors.hpp"

namespace headpose {

double wrap_angle(double theta_deg) {
    if (!std::isfinite(theta_deg)) {
        throw NumericalError("wrap_angle: non-finite angle");
    }
    double r = std::fmod(theta_deg + 180.0, 360.0);
    if (r <= 0.0) r += 360.0;
    return r - 180.0;
}

EulerPose EulerPose::normalized() const {
    EulerPose p{wrap_angle(pitch), wrap_angle(yaw), wrap_angle(roll)};
    if (std::abs(p.pitch) > 90.0) {
        p = EulerPose{wrap_angle(p.pitch + 180.0), wrap_angle(180.0 - p.yaw),
                      wrap_angle(p.roll + 180.0)};
    }
    return p;
}

RotationMatrix euler_to_matrix(const EulerPose& pose) {
    const double p = deg_to_rad(pose.pitch);
    const double y = deg_to_rad(pose.yaw);
    const double r = deg_to_rad(pose.roll);
    const double cp = std::cos(p), sp = std::sin(p);
    const double cy = std::cos(y), sy = std::sin(y);
    const double cr = std::cos(r), sr = std::sin(r);

    RotationMatrix m;
    m << cy * cr, -cy * sr, sy,
         cp * sr + sp * sy * cr, cp * cr - sp * sy * sr, -sp * cy,
         sp * sr - cp * sy * cr, sp * cr + cp * sy * sr, cp * cy;
    return m;
}

EulerPose matrix_to_euler(const RotationMatrix& rotation) {
    const double ortho = (rotation.transpose() * rotation - RotationMatrix::Identity())
                             .cwiseAbs()
                             .maxCoeff();
    if (!(ortho < 1e-6) || std::abs(rotation.determinant() - 1.0) > 1e-6) {
        throw NumericalError("matrix_to_euler: matrix is not a proper rotation");
    }

    const double sy = std::clamp(rotation(0, 2), -1.0, 1.0);
    if (std::abs(rotation(0, 2)) > 1.0 - 1e-7) {
        // Gimbal lock: yaw = +-90, roll forced to 0, residual goes to pitch.
        const double sign = rotation(0, 2) > 0.0 ? 1.0 : -1.0;
        const double pitch = rad_to_deg(std::atan2(sign * rotation(1, 0), rotation(1, 1)));
        return EulerPose{wrap_angle(pitch), sign * 90.0, 0.0};
    }

    const double yaw = rad_to_deg(std::asin(sy));
    const double pitch = rad_to_deg(std::atan2(-rotation(1, 2), rotation(2, 2)));
    const double roll = rad_to_deg(std::atan2(-rotation(0, 1), rotation(0, 0)));
    return EulerPose{pitch, yaw, roll}.normalized();
}

double awe(double pred_deg, double true_deg) {
    const double d = std::abs(wrap_angle(pred_deg) - wrap_angle(true_deg));
    return std::min(d, 360.0 - d);
}

double mawe(std::span<const double> pred_deg, std::span<const double> true_deg) {
    if (pred_deg.empty() || pred_deg.size() != true_deg.size()) {
        throw std::invalid_argument("mawe: empty or mismatched inputs");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred_deg.size(); ++i) {
        sum += awe(pred_deg[i], true_deg[i]);
    }
    return sum / static_cast<double>(pred_deg.size());
}

}  // namespace headpose
