#pragma once

#include <string>

#include "greedyrb/algorithms.hpp"

namespace greedyrb {

// Snapshot exchange formats. CSV: one snapshot per column, header row of
// parameter tuples. Binary: little-endian, an 8-value header of 64-bit
// words (magic, version, N_h, N_tr, p as an IEEE double, three reserved
// zeros) followed by the column-major payload of 64-bit floats.

void write_snapshots_csv(const std::string& path, const TrainingSet& ts);
TrainingSet read_snapshots_csv(const std::string& path, SpaceSpec space);

void write_snapshots_binary(const std::string& path, const TrainingSet& ts);
TrainingSet read_snapshots_binary(const std::string& path);

inline constexpr std::uint64_t kSnapshotMagic = 0x3153425247444552ULL;  // "REDGRBS1"
inline constexpr std::uint64_t kSnapshotVersion = 1;

}  // namespace greedyrb
