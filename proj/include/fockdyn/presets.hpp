// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fockdyn/config.hpp"

namespace fockdyn {

/// Fully populated configuration for one of the named scenarios. Throws
/// std::invalid_argument for unknown names.
ExperimentConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace fockdyn
