#pragma once

#include "degenpde/harness.hpp"

namespace degenpde {

/// CSV of boundary faces with kind, normal, and degeneracy labels.
void write_partition_csv(const std::string& path, const BoundaryPartition& partition);

/// CSV of the characteristic-boundary classification samples.
void write_sigma_csv(const std::string& path, const SigmaPartition& partition);

/// JSON of the beta report comparing Dirichlet-data loci.
void write_beta_json(const std::string& path, const BetaReport& report);

/// One CSV row per node per time level: level, t, node, coordinates, value.
void write_solution_csv(const std::string& path, const Grid& grid,
                        const Trajectory& u);

/// Contact-set mask in the same row layout as the solution CSV.
void write_exercise_csv(const std::string& path, const Grid& grid,
                        const std::vector<std::vector<char>>& exercise);

void write_report_json(const std::string& path, const VerificationReport& report);

/// Fixed-width text table, one row per verdict.
std::string format_report_text(const VerificationReport& report);

/// FNV-1a 64-bit checksum of a file's bytes.
std::uint64_t checksum_file(const std::string& path);

/// manifest.json in `dir` listing the given files (relative names) with
/// their checksums.
void write_manifest(const std::string& dir, const std::vector<std::string>& files);

} // namespace degenpde
