// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dsr/core.hpp"

namespace dsr {

/// Matrix Market I/O. Coordinate files load as sparse handles, array files as
/// dense. Writing emits array format for dense and coordinate for sparse,
/// with 17-significant-digit mantissas (binary64 round-trip).
MatrixHandle read_matrix_market(const std::filesystem::path& file);
void write_matrix_market(const std::filesystem::path& file, const MatrixHandle& M);

/// Loads a descriptor system from a JSON manifest binding matrix files to
/// structure metadata. D defaults to the zero matrix when omitted.
/// Throws ParseError / DimensionMismatch / ValidationFailed.
DescriptorSystem load_system(const std::filesystem::path& manifest_path);

/// Writes matrices + manifest under dir; returns the manifest path.
std::filesystem::path save_system(const DescriptorSystem& system, const std::filesystem::path& dir);

/// Persists a reduced model (matrices, polynomial coefficients, provenance
/// sidecar). load -> save -> load is value-identical.
std::filesystem::path save_model(const ReducedModel& model, const std::filesystem::path& dir);
ReducedModel load_model(const std::filesystem::path& manifest_path);

/// Interpolation data as JSON (shift files for the CLI).
InterpolationData load_interpolation_data(const std::filesystem::path& file);
void save_interpolation_data(const InterpolationData& data, const std::filesystem::path& file);

struct SyntheticParams {
    Index n = 0;          // ode kind
    Index n1 = 0, n2 = 0; // block kinds
    Index m = 1, p = 1;
    bool b2_zero = false; // index-2 kinds: force B2 = 0
    bool d_nonzero = false;
    bool sparse = false;  // emit sparse handles (rlc-index2 defaults to sparse)
};

/// Deterministic synthetic generators standing in for the unavailable source
/// datasets: "ode", "semiexplicit-index1", "stokes-index2", "rlc-index2".
/// Hidden/finite dynamics are asymptotically stable by construction.
DescriptorSystem generate_synthetic(const std::string& kind, const SyntheticParams& params, std::uint64_t seed);

}  // namespace dsr
