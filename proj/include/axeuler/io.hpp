#pragma once
// Durable outputs: 17-significant-digit text snapshots (bitwise round-trip),
// ledger CSV, and atomically written key = value manifests.

#include "axeuler/dynamics.hpp"
#include "axeuler/ledger.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace axeuler {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_sci17(double x);

void write_snapshot(const std::filesystem::path& path, const FieldState& s,
                    const EosSpec& eos);
FieldState read_snapshot(const std::filesystem::path& path);

void write_ledger_csv(const std::filesystem::path& path, const EnergyLedger& ledger);

// write-then-rename
void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

std::string snapshot_file_name(const std::string& run_id, std::size_t index);

} // namespace axeuler
