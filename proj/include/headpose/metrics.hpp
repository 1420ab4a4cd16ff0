#pragma once

#include <span>
#include <vector>

#include "headpose/annotate.hpp"

namespace headpose {

/// Per-band (over true yaw) mean errors. Bands partition (-180, 180];
/// band (lo, hi]. Only populated bands are reported.
struct BandStat {
    double lo = 0, hi = 0;
    long count = 0;
    double yaw_awe = 0;    // mean absolute wrapped error
    double pitch_abs = 0;  // mean |difference|
    double roll_abs = 0;
};

struct MetricsReport {
    double yaw_mawe = 0;
    double pitch_mae = 0;
    double roll_mae = 0;
    double combined = 0;  // mean of the three per-angle means
    long matched = 0;
    long unmatched_predictions = 0;
    std::vector<BandStat> bands;  // 30-degree bands by default
};

/// Aggregate prediction error against matching annotations (key: frame,
/// subject, camera). Yaw error is wrapped (AWE); pitch and roll use plain
/// absolute differences. Matched pairs are processed in key order, so the
/// report does not depend on input order. Throws DataError when nothing
/// matches; predictions without a matching annotation are only counted.
MetricsReport compute_report(std::span<const AnnotationRecord> annotations,
                             std::span<const PredictionRecord> predictions,
                             double band_width_deg = 30.0);

/// Per-band mean errors with samples assigned by their TRUE yaw.
/// `band_width_deg` must evenly divide 360.
std::vector<BandStat> yaw_binned_histogram(std::span<const AnnotationRecord> annotations,
                                           std::span<const PredictionRecord> predictions,
                                           double band_width_deg);

}  // namespace headpose
