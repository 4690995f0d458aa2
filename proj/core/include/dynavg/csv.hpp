#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynavg/simulator.hpp"

namespace dynavg {

/// File-system failure while emitting results; the message carries the path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Doubles with 17 significant digits, locale-independent; parses back to the
/// identical bit pattern.
std::string format_g17(double v);

/// Shortest representation that round-trips.
std::string format_shortest(double v);

/// Per-round CSV: header
/// t,loss_round,loss_cum,divergence,violations,sync_kind,messages_round,messages_cum
/// one row per round, LF line endings.
std::string round_csv(const RunResult& result);

/// Writes round_csv to `path` via a temp file and rename, so a failed run
/// never leaves a truncated file behind.
void emit_round_csv(const RunResult& result, const std::filesystem::path& path);

struct SummaryRow {
    std::string protocol;
    std::size_t k = 0;
    std::uint64_t rounds = 0;
    std::string delta_or_b;  // pre-formatted; empty when not applicable
    std::uint64_t seed = 0;
    double loss_cum = 0.0;
    std::size_t messages_total = 0;
    std::size_t bytes_total = 0;
    std::size_t violations_total = 0;
    std::optional<std::size_t> theorem1_lhs;  // dynamic runs only
    std::optional<double> theorem1_rhs;
    double serial_loss_ref = 0.0;
};

std::string summary_csv(const std::vector<SummaryRow>& rows);

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

}  // namespace dynavg
