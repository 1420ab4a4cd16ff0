#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "headpose/annotate.hpp"

namespace headpose {

/// Load a dome-style calibration file.
///
/// Schema: a JSON object with a "cameras" array; each camera carries
/// name (string), type (string), resolution ([w, h]), K (3x3 nested arrays),
/// distCoef (5 floats), R (3x3), t (3x1 nested or flat [x, y, z]), units
/// centimeters. Unknown keys are ignored. When `type_filter` is set, cameras
/// of any other type are skipped.
///
/// Every R must be orthonormal with det +1: deviation beyond 1e-4 (or a
/// reflection) is an error naming the camera; deviation beyond 1e-6 is
/// re-orthonormalized and counted in `reorthonormalized`.
struct CalibrationLoadResult {
    CalibrationSet calibration;
    int reorthonormalized = 0;
};
CalibrationLoadResult load_calibration(const std::filesystem::path& path,
                                       const std::optional<std::string>& type_filter = {});

void write_calibration(const CalibrationSet& calib, const std::filesystem::path& path);

/// Load 3D face landmark frames from a file or a directory of files.
///
/// Each file holds one frame: {"people": [{"id": n, "face70": {"landmarks":
/// [x, y, z, ...]}}]}, with the frame id taken from the last run of digits in
/// the file name. Frames come back sorted by ascending frame id. Subjects
/// whose landmark count differs from `expected_landmarks` are dropped and
/// reported.
struct FaceFrameLoadResult {
    std::vector<FaceFrame> frames;
    std::vector<SkipReport> skips;
};
FaceFrameLoadResult load_face_frames(const std::filesystem::path& path,
                                     int expected_landmarks = 70);

/// Annotation / prediction record streams as JSON Lines: one object per line
/// behind a `#`-prefixed header line carrying the schema version. Doubles are
/// serialized with shortest-round-trip formatting, so write -> load is the
/// identity on every field.
void write_annotations(const std::vector<AnnotationRecord>& records,
                       const std::filesystem::path& path);
void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path);

struct AnnotationLoadResult {
    std::vector<AnnotationRecord> records;
    std::vector<std::pair<int, std::string>> bad_lines;  // line number, reason
};
AnnotationLoadResult load_annotations(const std::filesystem::path& path);

struct PredictionLoadResult {
    std::vector<PredictionRecord> records;
    std::vector<std::pair<int, std::string>> bad_lines;
};
PredictionLoadResult load_predictions(const std::filesystem::path& path);

}  // namespace headpose
