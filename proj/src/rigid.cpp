#include "headpose/rigid.hpp"

#include <stdexcept>

#include "headpose/errors.hpp"

namespace headpose {

RigidTransform fit_rigid(const PointSet3& source, const PointSet3& target) {
    const auto m = source.cols();
    if (m != target.cols()) {
        throw std::invalid_argument("fit_rigid: point sets differ in size");
    }
    if (m < 3) {
        throw std::invalid_argument("fit_rigid: need at least 3 points");
    }
    if (!source.allFinite() || !target.allFinite()) {
        throw NumericalError("fit_rigid: non-finite coordinates");
    }

    const Eigen::Vector3d cs = source.rowwise().mean();
    const Eigen::Vector3d ct = target.rowwise().mean();
    const PointSet3 src = source.colwise() - cs;
    const PointSet3 tgt = target.colwise() - ct;

    {
        Eigen::JacobiSVD<Eigen::Matrix3Xd> rank_check(src);
        const auto& sv = rank_check.singularValues();
        if (sv[1] <= 1e-10 * sv[0]) {
            throw NumericalError("fit_rigid: degenerate (colinear) source points");
        }
    }

    const Eigen::Matrix3d h = src * tgt.transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
    if (r.determinant() < 0.0) {
        Eigen::Matrix3d v = svd.matrixV();
        v.col(2) *= -1.0;
        r = v * svd.matrixU().transpose();
    }
    return RigidTransform{r, ct - r * cs};
}

PointSet3 apply_rigid(const RigidTransform& t, const PointSet3& pts) {
    return (t.rotation * pts).colwise() + t.translation;
}

double residual_rms(const RigidTransform& t, const PointSet3& source, const PointSet3& target) {
    if (source.cols() != target.cols()) {
        throw std::invalid_argument("residual_rms: point sets differ in size");
    }
    if (source.cols() == 0) {
        throw std::invalid_argument("residual_rms: empty point sets");
    }
    const PointSet3 diff = apply_rigid(t, source) - target;
    return std::sqrt(diff.colwise().squaredNorm().sum() / static_cast<double>(source.cols()));
}

}  // namespace headpose
