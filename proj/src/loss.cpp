#include "headpose/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "headpose/angles.hpp"
#include "headpose/errors.hpp"

namespace headpose {

BinConfig BinConfig::yaw() { return BinConfig{120, 3.0, -180.0}; }
BinConfig BinConfig::pitch_roll() { return BinConfig{66, 3.0, -99.0}; }

int angle_to_bin(double theta_deg, const BinConfig& cfg) {
    if (!std::isfinite(theta_deg)) {
        throw NumericalError("angle_to_bin: non-finite angle");
    }
    const int i = static_cast<int>(std::ceil((theta_deg - cfg.lower_edge) / cfg.width));
    if (i < 1 || i > cfg.count) {
        throw DataError("angle_to_bin: angle outside covered range");
    }
    return i;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    const double m = logits.maxCoeff();
    Eigen::VectorXd e = (logits.array() - m).exp();
    return e / e.sum();
}

double decode_expectation(const Eigen::VectorXd& probs, const BinConfig& cfg) {
    if (probs.size() != cfg.count) {
        throw std::invalid_argument("decode_expectation: length does not match bin count");
    }
    if (probs.minCoeff() < -1e-12 || std::abs(probs.sum() - 1.0) > 1e-6) {
        throw DataError("decode_expectation: invalid probability vector");
    }
    const double offset = (1.0 + cfg.count) / 2.0;
    double acc = 0.0;
    for (int i = 1; i <= cfg.count; ++i) {
        acc += probs[i - 1] * (i - offset);
    }
    return cfg.width * acc;
}

namespace {

void check_pairs(std::span<const double> a, std::span<const double> b, const char* who) {
    if (a.empty() || a.size() != b.size()) {
        throw std::invalid_argument(std::string(who) + ": empty or mismatched inputs");
    }
}

double wrapped_term(double d) {
    const double ad = std::abs(d);
    return ad <= 180.0 ? d * d : (360.0 - ad) * (360.0 - ad);
}

}  // namespace

double wrapped_loss(std::span<const double> pred_deg, std::span<const double> true_deg) {
    check_pairs(pred_deg, true_deg, "wrapped_loss");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred_deg.size(); ++i) {
        sum += wrapped_term(pred_deg[i] - true_deg[i]);
    }
    return sum / static_cast<double>(pred_deg.size());
}

double mse_loss(std::span<const double> pred_deg, std::span<const double> true_deg) {
    check_pairs(pred_deg, true_deg, "mse_loss");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred_deg.size(); ++i) {
        const double d = pred_deg[i] - true_deg[i];
        sum += d * d;
    }
    return sum / static_cast<double>(pred_deg.size());
}

LossGrad regression_loss_grad(const Eigen::VectorXd& logits, double true_deg,
                              const BinConfig& cfg, RegressionKind kind) {
    const Eigen::VectorXd p = softmax(logits);
    const double offset = (1.0 + cfg.count) / 2.0;
    double theta = 0.0;
    for (int i = 1; i <= cfg.count; ++i) {
        theta += p[i - 1] * (i - offset);
    }
    theta *= cfg.width;

    const double d = theta - true_deg;
    double loss, dl_dtheta;
    if (kind == RegressionKind::Mse || std::abs(d) <= 180.0) {
        loss = d * d;
        dl_dtheta = 2.0 * d;
    } else {
        const double g = 360.0 - std::abs(d);
        loss = g * g;
        dl_dtheta = -2.0 * g * (d > 0.0 ? 1.0 : -1.0);
    }

    // d theta / d z_j = p_j * (center_j - theta); chain with dl/dtheta.
    Eigen::VectorXd grad(cfg.count);
    for (int j = 0; j < cfg.count; ++j) {
        const double center = cfg.width * (j + 1 - offset);
        grad[j] = dl_dtheta * p[j] * (center - theta);
    }
    return LossGrad{loss, std::move(grad)};
}

LossGrad classification_loss_grad(const Eigen::VectorXd& logits, int target_bin,
                                  ClassificationKind kind) {
    const int n = static_cast<int>(logits.size());
    if (target_bin < 1 || target_bin > n) {
        throw std::invalid_argument("classification_loss_grad: target bin out of range");
    }
    const int t = target_bin - 1;
    Eigen::VectorXd grad(n);
    double loss = 0.0;
    if (kind == ClassificationKind::CeSoftmax) {
        const double m = logits.maxCoeff();
        const double lse = m + std::log((logits.array() - m).exp().sum());
        loss = lse - logits[t];
        grad = softmax(logits);
        grad[t] -= 1.0;
    } else {
        // Mean over bins of binary cross-entropy with logits, one-hot target.
        for (int j = 0; j < n; ++j) {
            const double z = logits[j];
            const double y = (j == t) ? 1.0 : 0.0;
            loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
            const double s = 1.0 / (1.0 + std::exp(-z));
            grad[j] = (s - y) / n;
        }
        loss /= n;
    }
    return LossGrad{loss, std::move(grad)};
}

LossGrad combined_loss(const Eigen::VectorXd& logits, double true_deg, const BinConfig& cfg,
                       const LossWeights& w, RegressionKind reg_kind,
                       ClassificationKind cls_kind) {
    const LossGrad reg = regression_loss_grad(logits, true_deg, cfg, reg_kind);
    const int target = angle_to_bin(true_deg, cfg);
    const LossGrad cls = classification_loss_grad(logits, target, cls_kind);
    return LossGrad{w.alpha * reg.loss + w.beta * cls.loss,
                    w.alpha * reg.grad + w.beta * cls.grad};
}

}  // namespace headpose
