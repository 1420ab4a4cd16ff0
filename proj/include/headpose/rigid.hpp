#pragma once

#include <Eigen/Dense>

namespace headpose {

/// Ordered 3D point set, one point per column, centimeters. Correspondence
/// between two sets is positional (column k matches column k).
using PointSet3 = Eigen::Matrix3Xd;

/// Proper rigid motion p -> rotation * p + translation (no scale, det = +1).
struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    [[nodiscard]] Eigen::Vector3d operator()(const Eigen::Vector3d& p) const {
        return rotation * p + translation;
    }
    [[nodiscard]] RigidTransform inverse() const {
        return RigidTransform{rotation.transpose(), -(rotation.transpose() * translation)};
    }
    /// Composition: (a * b)(p) == a(b(p)).
    friend RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
        return RigidTransform{a.rotation * b.rotation, a.rotation * b.translation + a.translation};
    }
};

/// Least-squares rigid alignment mapping `source` onto `target`:
/// minimizes sum_k ||R*source_k + t - target_k||^2 over proper rotations and
/// translations (centroid subtraction + SVD of the cross-covariance, with the
/// sign of the smallest singular vector corrected so no reflection is ever
/// returned). Throws on fewer than 3 points, mismatched sizes, or a colinear
/// (rank < 2 after centering) source.
RigidTransform fit_rigid(const PointSet3& source, const PointSet3& target);

PointSet3 apply_rigid(const RigidTransform& t, const PointSet3& pts);

/// Root-mean-square of ||t(source_k) - target_k|| in centimeters.
double residual_rms(const RigidTransform& t, const PointSet3& source, const PointSet3& target);

}  // namespace headpose
