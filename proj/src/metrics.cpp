#include "headpose/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "headpose/errors.hpp"

namespace headpose {

namespace {

using Key = std::tuple<long, int, std::string>;

struct MatchedPair {
    EulerPose truth;
    EulerPose pred;
};

// Matched pairs sorted by key; also reports how many predictions went unmatched.
std::pair<std::map<Key, MatchedPair>, long> match_records(
    std::span<const AnnotationRecord> annotations, std::span<const PredictionRecord> predictions) {
    std::map<Key, EulerPose> truth;
    for (const auto& a : annotations) {
        truth[Key{a.frame_id, a.subject_id, a.camera_id}] = a.pose;
    }
    std::map<Key, MatchedPair> matched;
    long unmatched = 0;
    for (const auto& p : predictions) {
        const Key k{p.frame_id, p.subject_id, p.camera_id};
        auto it = truth.find(k);
        if (it == truth.end()) {
            ++unmatched;
        } else {
            matched[k] = MatchedPair{it->second, p.pose};
        }
    }
    return {std::move(matched), unmatched};
}

std::vector<BandStat> banded_errors(const std::map<Key, MatchedPair>& matched,
                                    double band_width_deg) {
    const double n_bands_f = 360.0 / band_width_deg;
    const int n_bands = static_cast<int>(std::lround(n_bands_f));
    if (band_width_deg <= 0.0 || std::abs(n_bands_f - n_bands) > 1e-9) {
        throw std::invalid_argument("band width must evenly divide 360");
    }

    struct Acc {
        long n = 0;
        double yaw = 0, pitch = 0, roll = 0;
    };
    std::vector<Acc> acc(n_bands);
    for (const auto& [key, pair] : matched) {
        const double ty = wrap_angle(pair.truth.yaw);
        int b = static_cast<int>(std::ceil((ty + 180.0) / band_width_deg)) - 1;
        b = std::clamp(b, 0, n_bands - 1);
        acc[b].n += 1;
        acc[b].yaw += awe(pair.pred.yaw, pair.truth.yaw);
        acc[b].pitch += std::abs(pair.pred.pitch - pair.truth.pitch);
        acc[b].roll += std::abs(pair.pred.roll - pair.truth.roll);
    }

    std::vector<BandStat> out;
    for (int b = 0; b < n_bands; ++b) {
        if (acc[b].n == 0) continue;
        const double n = static_cast<double>(acc[b].n);
        out.push_back(BandStat{-180.0 + b * band_width_deg, -180.0 + (b + 1) * band_width_deg,
                               acc[b].n, acc[b].yaw / n, acc[b].pitch / n, acc[b].roll / n});
    }
    return out;
}

}  // namespace

MetricsReport compute_report(std::span<const AnnotationRecord> annotations,
                             std::span<const PredictionRecord> predictions,
                             double band_width_deg) {
    auto [matched, unmatched] = match_records(annotations, predictions);
    if (matched.empty()) {
        throw DataError("compute_report: no prediction matches any annotation");
    }

    double yaw_sum = 0, pitch_sum = 0, roll_sum = 0;
    for (const auto& [key, pair] : matched) {
        yaw_sum += awe(pair.pred.yaw, pair.truth.yaw);
        pitch_sum += std::abs(pair.pred.pitch - pair.truth.pitch);
        roll_sum += std::abs(pair.pred.roll - pair.truth.roll);
    }

    MetricsReport rep;
    rep.matched = static_cast<long>(matched.size());
    rep.unmatched_predictions = unmatched;
    const double n = static_cast<double>(rep.matched);
    rep.yaw_mawe = yaw_sum / n;
    rep.pitch_mae = pitch_sum / n;
    rep.roll_mae = roll_sum / n;
    rep.combined = (rep.yaw_mawe + rep.pitch_mae + rep.roll_mae) / 3.0;
    rep.bands = banded_errors(matched, band_width_deg);
    return rep;
}

std::vector<BandStat> yaw_binned_histogram(std::span<const AnnotationRecord> annotations,
                                           std::span<const PredictionRecord> predictions,
                                           double band_width_deg) {
    auto [matched, unmatched] = match_records(annotations, predictions);
    (void)unmatched;
    return banded_errors(matched, band_width_deg);
}

}  // namespace headpose
