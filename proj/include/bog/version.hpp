// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace bog {

inline constexpr const char* kToolName = "bogsim";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace bog
