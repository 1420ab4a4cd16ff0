#include "headpose/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "headpose/errors.hpp"

namespace headpose {

PointSet3 ReferenceTemplate::retained() const { return retain_from(landmarks); }

PointSet3 ReferenceTemplate::retain_from(const PointSet3& observed) const {
    if (observed.cols() != landmarks.cols()) {
        throw std::invalid_argument("ReferenceTemplate: landmark count mismatch");
    }
    const std::set<int> drop(excluded_indices.begin(), excluded_indices.end());
    PointSet3 out(3, observed.cols() - static_cast<Eigen::Index>(drop.size()));
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < observed.cols(); ++i) {
        if (!drop.count(static_cast<int>(i))) out.col(k++) = observed.col(i);
    }
    return out;
}

CameraExtrinsics make_reference_camera(double distance_cm) {
    // World frame: +y down, face looks along +z. The camera sits on the +z
    // axis looking back at the template; image y (down) aligns with world y.
    CameraExtrinsics e;
    e.R << -1, 0, 0,
            0, 1, 0,
            0, 0, -1;
    e.t = Eigen::Vector3d(0, 0, distance_cm);
    return e;
}

std::pair<CameraExtrinsics, double> build_virtual_extrinsics(const ReferenceTemplate& tmpl,
                                                             const CameraExtrinsics& ref_cam,
                                                             const PointSet3& observed) {
    if (tmpl.retained().cols() < 3) {
        throw std::invalid_argument("build_virtual_extrinsics: too few retained landmarks");
    }
    const PointSet3 src = tmpl.retained();
    const PointSet3 tgt = tmpl.retain_from(observed);
    const RigidTransform fit = fit_rigid(src, tgt);
    const double rms = residual_rms(fit, src, tgt);
    const RigidTransform virt = ref_cam.as_rigid() * fit.inverse();
    return {CameraExtrinsics::from_rigid(virt), rms};
}

EulerPose camera_relative_pose(const CameraExtrinsics& e_real, const CameraExtrinsics& e_virt) {
    const RigidTransform rel = e_real.as_rigid() * e_virt.as_rigid().inverse();
    const EulerPose raw = matrix_to_euler(rel.rotation);
    return EulerPose{raw.pitch, wrap_angle(-raw.yaw), wrap_angle(-raw.roll)};
}

namespace {

// Deterministic Fibonacci lattice on the unit sphere.
Eigen::Vector3d fibonacci_dir(int k, int n) {
    constexpr double golden = 1.61803398874989484820;
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * std::numbers::pi * k / golden;
    return {s * std::cos(phi), s * std::sin(phi), z};
}

}  // namespace

std::optional<CropBox> helmet_bbox(const Eigen::Vector3d& head_center, const HelmetConfig& cfg,
                                   const CameraIntrinsics& intr, const CameraExtrinsics& extr) {
    const Eigen::Vector3d center_cam = extr.to_camera(head_center);
    if (center_cam.z() <= 0.0) return std::nullopt;

    const double fx = intr.K(0, 0), fy = intr.K(1, 1);
    const double skew = intr.K(0, 1);
    const double cx = intr.K(0, 2), cy = intr.K(1, 2);

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (int k = 0; k < cfg.sample_count; ++k) {
        const Eigen::Vector3d p =
            extr.R * (head_center + cfg.radius_cm * fibonacci_dir(k, cfg.sample_count)) + extr.t;
        if (p.z() <= 0.0) return std::nullopt;  // camera inside or touching the helmet
        const double u = (fx * p.x() + skew * p.y()) / p.z() + cx;
        const double v = fy * p.y() / p.z() + cy;
        x_min = std::min(x_min, u);
        x_max = std::max(x_max, u);
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
    }

    const double side = (1.0 + cfg.margin_k) * std::max(x_max - x_min, y_max - y_min);
    const double mx = 0.5 * (x_min + x_max), my = 0.5 * (y_min + y_max);
    CropBox box{mx - side / 2.0, my - side / 2.0, mx + side / 2.0, my + side / 2.0};

    box.x_min = std::clamp(box.x_min, 0.0, static_cast<double>(intr.width));
    box.x_max = std::clamp(box.x_max, 0.0, static_cast<double>(intr.width));
    box.y_min = std::clamp(box.y_min, 0.0, static_cast<double>(intr.height));
    box.y_max = std::clamp(box.y_max, 0.0, static_cast<double>(intr.height));
    if (box.empty()) return std::nullopt;
    return box;
}

FrameAnnotations annotate_frame(const FaceFrame& frame, const CalibrationSet& calib,
                                const ReferenceTemplate& tmpl, const CameraExtrinsics& ref_cam,
                                const HelmetConfig& helmet) {
    FrameAnnotations out;
    for (const auto& [subject_id, landmarks] : frame.subjects) {
        CameraExtrinsics e_virt;
        double rms = 0.0;
        try {
            std::tie(e_virt, rms) = build_virtual_extrinsics(tmpl, ref_cam, landmarks);
        } catch (const std::exception& e) {
            out.skips.push_back({frame.frame_id, subject_id, e.what()});
            continue;
        }
        const Eigen::Vector3d head_center = landmarks.rowwise().mean();
        for (const auto& [camera_id, cam] : calib.cameras) {
            const auto& [intr, extr] = cam;
            const auto box = helmet_bbox(head_center, helmet, intr, extr);
            if (!box) continue;
            AnnotationRecord rec;
            rec.frame_id = frame.frame_id;
            rec.subject_id = subject_id;
            rec.camera_id = camera_id;
            rec.pose = camera_relative_pose(extr, e_virt).normalized();
            rec.crop_box = *box;
            rec.fit_rms = rms;
            rec.gimbal_warning = std::abs(rec.pose.pitch) > 89.0;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace headpose
