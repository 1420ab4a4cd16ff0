#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "headpose/angles.hpp"
#include "headpose/rigid.hpp"

namespace headpose {

/// Pinhole intrinsics. Distortion coefficients are carried through untouched;
/// projection is always pinhole (Euler labels are distortion-independent).
struct CameraIntrinsics {
    Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
    int width = 0;
    int height = 0;
    std::array<double, 5> distortion{};
};

/// World-to-camera map p_cam = R * p_world + t, centimeters.
struct CameraExtrinsics {
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d t = Eigen::Vector3d::Zero();

    [[nodiscard]] Eigen::Vector3d to_camera(const Eigen::Vector3d& p_world) const {
        return R * p_world + t;
    }
    [[nodiscard]] RigidTransform as_rigid() const { return RigidTransform{R, t}; }
    static CameraExtrinsics from_rigid(const RigidTransform& m) {
        return CameraExtrinsics{m.rotation, m.translation};
    }
};

/// Neutral-pose reference landmarks plus the indices to drop before fitting
/// (typically the noisy jawline contour).
struct ReferenceTemplate {
    PointSet3 landmarks;
    std::vector<int> excluded_indices;

    /// Landmarks with the excluded indices removed, order preserved.
    [[nodiscard]] PointSet3 retained() const;
    /// Apply the same exclusion to an observed point set of equal size.
    [[nodiscard]] PointSet3 retain_from(const PointSet3& observed) const;
};

struct HelmetConfig {
    double radius_cm = 21.0;
    int sample_count = 256;
    double margin_k = 0.5;
};

struct CropBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    [[nodiscard]] bool empty() const { return !(x_max > x_min) || !(y_max > y_min); }
    [[nodiscard]] double width() const { return x_max - x_min; }
    [[nodiscard]] double height() const { return y_max - y_min; }
};

/// One labeled head observation for one camera.
struct AnnotationRecord {
    long frame_id = 0;
    int subject_id = 0;
    std::string camera_id;
    EulerPose pose;
    CropBox crop_box;
    double fit_rms = 0.0;
    bool gimbal_warning = false;  // |pitch| > 89 deg: label degenerate-adjacent
};

/// Prediction for the same key, pose only.
struct PredictionRecord {
    long frame_id = 0;
    int subject_id = 0;
    std::string camera_id;
    EulerPose pose;
};

struct CalibrationSet {
    std::map<std::string, std::pair<CameraIntrinsics, CameraExtrinsics>> cameras;
};

struct FaceFrame {
    long frame_id = 0;
    std::vector<std::pair<int, PointSet3>> subjects;  // subject id -> landmarks
};

struct SkipReport {
    long frame_id = 0;
    int subject_id = 0;
    std::string reason;
};

struct FrameAnnotations {
    std::vector<AnnotationRecord> records;
    std::vector<SkipReport> skips;
};

/// Canonical reference camera: frontal view of the template from
/// `distance_cm` along the face-forward axis. Pose labels do not depend on
/// this distance, only on the viewing direction.
CameraExtrinsics make_reference_camera(double distance_cm = 150.0);

/// Fit the template to the observed landmarks (exclusions applied to both)
/// and place a virtual camera that sees the observed head exactly as the
/// reference camera sees the template: E_virt = E_ref composed with the
/// inverse of the fitted rigid motion. Returns the extrinsics and the fit RMS.
std::pair<CameraExtrinsics, double> build_virtual_extrinsics(const ReferenceTemplate& tmpl,
                                                             const CameraExtrinsics& ref_cam,
                                                             const PointSet3& observed);

/// Relative pose of a real camera against the virtual (frontal) camera:
/// Euler angles of the rotation part of T = E_real * E_virt^-1, with yaw and
/// roll mirrored to match the dataset rotation convention; yaw in (-180, 180].
EulerPose camera_relative_pose(const CameraExtrinsics& e_real, const CameraExtrinsics& e_virt);

/// Axis-aligned bounding box of the pinhole projections of `cfg.sample_count`
/// Fibonacci-lattice points on the sphere of `cfg.radius_cm` around
/// `head_center` (world, cm), expanded to a square of side
/// (1 + margin_k) * max(width, height) about its center, then clamped to the
/// image. Returns nullopt when the center is not in front of the camera, the
/// camera is inside the helmet sphere, or the clamped box is empty.
std::optional<CropBox> helmet_bbox(const Eigen::Vector3d& head_center, const HelmetConfig& cfg,
                                   const CameraIntrinsics& intr, const CameraExtrinsics& extr);

/// Full per-frame labeling: one record per (subject, camera) whose crop
/// survives clamping. The helmet is centered on the centroid of the subject's
/// observed landmarks. Subjects whose rigid fit fails are skipped and
/// reported; a fit failure never aborts the frame.
FrameAnnotations annotate_frame(const FaceFrame& frame, const CalibrationSet& calib,
                                const ReferenceTemplate& tmpl, const CameraExtrinsics& ref_cam,
                                const HelmetConfig& helmet);

}  // namespace headpose
