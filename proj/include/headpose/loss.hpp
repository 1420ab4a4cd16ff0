#pragma once

#include <Eigen/Dense>
#include <span>

namespace headpose {

/// Uniform discretization of an angle range. Bin i (1-based) covers the
/// half-open interval (lower_edge + (i-1)*width, lower_edge + i*width].
struct BinConfig {
    int count = 0;
    double width = 3.0;
    double lower_edge = 0.0;

    /// 120 x 3 degree bins covering (-180, 180].
    static BinConfig yaw();
    /// 66 x 3 degree bins covering (-99, 99].
    static BinConfig pitch_roll();

    [[nodiscard]] double upper_edge() const { return lower_edge + count * width; }
    /// Center of bin i (1-based).
    [[nodiscard]] double center(int i) const { return lower_edge + (i - 0.5) * width; }
};

/// 1-based bin index of theta. Throws DataError when theta lies outside the
/// covered range; wrap yaw inputs first. Boundary values belong to the
/// lower-indexed bin.
int angle_to_bin(double theta_deg, const BinConfig& cfg);

/// Numerically stable softmax; invariant to adding a constant to all logits.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

/// Expected angle under per-bin probabilities: width * sum_i p_i * (i - (1+N)/2).
/// Equals the probability-weighted mean of bin centers for the symmetric
/// presets above. Throws DataError if probabilities are invalid (negative
/// entries or |sum - 1| > 1e-6).
double decode_expectation(const Eigen::VectorXd& probs, const BinConfig& cfg);

/// Mean over pairs of min(|d|^2, (360-|d|)^2), d = pred - truth. Penalizes the
/// minimal rotation between the two angles, so antipodal-looking raw
/// differences near +-360 stay cheap.
double wrapped_loss(std::span<const double> pred_deg, std::span<const double> true_deg);

/// Mean over pairs of (pred - truth)^2 on raw (unwrapped) differences.
double mse_loss(std::span<const double> pred_deg, std::span<const double> true_deg);

enum class RegressionKind { Wrapped, Mse };
enum class ClassificationKind { BceSigmoid, CeSoftmax };

struct LossWeights {
    double alpha = 1.0;  // regression weight
    double beta = 1.0;   // classification weight
};

struct LossGrad {
    double loss = 0.0;
    Eigen::VectorXd grad;  // d loss / d logits
};

/// Regression loss of the softmax-expectation decode of `logits` against a
/// scalar target, with the analytic gradient w.r.t. the logits. At the
/// non-smooth point |d| = 180 the |d|^2 branch's subgradient is returned.
LossGrad regression_loss_grad(const Eigen::VectorXd& logits, double true_deg,
                              const BinConfig& cfg, RegressionKind kind);

/// Classification loss against a one-hot target bin (1-based) with gradient.
/// BceSigmoid is the mean over bins of per-bin binary cross-entropies;
/// CeSoftmax is the usual softmax cross-entropy.
LossGrad classification_loss_grad(const Eigen::VectorXd& logits, int target_bin,
                                  ClassificationKind kind);

/// alpha * regression + beta * classification, gradient combined the same way.
LossGrad combined_loss(const Eigen::VectorXd& logits, double true_deg, const BinConfig& cfg,
                       const LossWeights& w, RegressionKind reg_kind,
                       ClassificationKind cls_kind);

}  // namespace headpose
