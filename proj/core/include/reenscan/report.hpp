// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "reenscan/detector.hpp"

namespace reenscan {

/// Versioned report document (schema_version 1). Keys are emitted sorted,
/// so identical inputs produce byte-identical documents apart from the
/// timing_ms field.
std::string report_to_json(const DetectionReport& report, int indent = 2);

/// The cross-contract graph (contracts, edges, chains) for offline
/// inspection.
std::string xgraph_to_json(const XGraph& g, int indent = 2);

}  // namespace reenscan
