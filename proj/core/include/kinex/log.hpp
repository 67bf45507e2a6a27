//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iostream>
#include <string_view>

namespace kinex {

inline bool& warnings_enabled() {
  static bool enabled = true;
  return enabled;
}

inline void log_warning(std::string_view msg) {
  if (warnings_enabled()) {
    std::cerr << "kinex: warning: " << msg << "\n";
  }
}

}  // namespace kinex
