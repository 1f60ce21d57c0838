// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "moped/metrics.hpp"

namespace moped {

/// Self-contained SVG step plot of the profile curves: log2 tau on the x
/// axis, gamma on the y axis, one polyline per solver with a legend.
std::string profile_svg(const ProfileResult& profile, const std::string& title);

}  // namespace moped
