#pragma once

#include "headpose/annotate.hpp"

namespace headpose {

/// Built-in neutral-pose 70-landmark face template, centimeters.
///
/// Layout follows the usual 68-point contour scheme plus two pupils:
/// 0-16 jaw contour, 17-26 eyebrows, 27-35 nose, 36-47 eyes, 48-67 lips,
/// 68-69 pupils. Frame: +y down, +z out of the face, x left-right (the face
/// is bilaterally symmetric in x). When `exclude_jawline` is set the jaw
/// contour indices 0-16 are listed as excluded from rigid fitting.
ReferenceTemplate default_face_template(bool exclude_jawline = true);

}  // namespace headpose
