#include "headpose/face_template.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace headpose {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ReferenceTemplate default_face_template(bool exclude_jawline) {
    PointSet3 pts(3, 70);
    int idx = 0;
    auto put = [&](double x, double y, double z) { pts.col(idx++) = Eigen::Vector3d(x, y, z); };

    // 0-16 jaw contour, right ear edge -> chin -> left ear edge.
    for (int i = 0; i < 17; ++i) {
        const double t = -kPi / 2 + kPi * i / 16.0;
        const double x = 7.3 * std::sin(t);
        const double y = -0.5 + 6.9 * std::cos(t);
        const double z = -2.8 + 3.0 * std::cos(t);
        put(x, y, z);
    }
    // 17-21 right eyebrow, 22-26 left eyebrow.
    for (int side = -1; side <= 1; side += 2) {
        for (int i = 0; i < 5; ++i) {
            const double u = i / 4.0;
            const double x = side * (5.4 - 4.2 * u);
            const double y = -3.4 - 0.5 * std::sin(kPi * u);
            const double z = 1.0 + 0.6 * std::sin(kPi * u);
            put(x, y, z);
        }
    }
    // 27-30 nose bridge down to tip.
    for (int i = 0; i < 4; ++i) {
        put(0.0, -2.4 + i * 1.1, 1.4 + i * 0.4);
    }
    // 31-35 nose base.
    for (int i = 0; i < 5; ++i) {
        const double x = -1.4 + 0.7 * i;
        put(x, 1.6, 2.0 - 0.35 * std::abs(x));
    }
    // 36-41 right eye, 42-47 left eye (hexagonal outline).
    for (int side = -1; side <= 1; side += 2) {
        for (int i = 0; i < 6; ++i) {
            const double a = kPi * (i < 3 ? (1.0 - i / 2.0 * 0.8) : (-0.2 - (i - 3) / 2.0 * 0.8));
            put(side * 3.2 + 1.3 * std::cos(a) * side, -2.2 - 0.45 * std::sin(a),
                0.6 - 0.15 * std::cos(a) * std::cos(a));
        }
    }
    // 48-59 outer lip, 60-67 inner lip.
    for (int i = 0; i < 12; ++i) {
        const double a = 2.0 * kPi * i / 12.0;
        put(2.6 * std::cos(a), 3.6 + 1.0 * std::sin(a), 1.0 + 0.2 * std::cos(a) * std::cos(a));
    }
    for (int i = 0; i < 8; ++i) {
        const double a = 2.0 * kPi * i / 8.0;
        put(1.6 * std::cos(a), 3.6 + 0.4 * std::sin(a), 1.1);
    }
    // 68-69 pupils.
    put(-3.2, -2.2, 0.8);
    put(3.2, -2.2, 0.8);

    ReferenceTemplate tmpl;
    tmpl.landmarks = pts;
    if (exclude_jawline) {
        tmpl.excluded_indices.resize(17);
        std::iota(tmpl.excluded_indices.begin(), tmpl.excluded_indices.end(), 0);
    }
    return tmpl;
}

}  // namespace headpose
