#include "dynavg/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace dynavg {

std::string format_g17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string round_csv(const RunResult& result) {
    std::ostringstream out;
    out << "t,loss_round,loss_cum,divergence,violations,sync_kind,messages_round,messages_cum\n";
    for (const RoundMetrics& m : result.per_round) {
        out << m.t << ',' << format_g17(m.loss_round) << ',' << format_g17(m.loss_cum) << ','
            << format_g17(m.divergence) << ',' << m.violations << ',' << to_string(m.sync_kind)
            << ',' << m.messages_round << ',' << m.messages_cum << '\n';
    }
    return out.str();
}

namespace {

void atomic_write(const std::string& content, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                          "': " + ec.message());
}

}  // namespace

void emit_round_csv(const RunResult& result, const std::filesystem::path& path) {
    atomic_write(round_csv(result), path);
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "protocol,k,T,delta_or_b,seed,loss_cum,messages_total,bytes_total,"
           "violations_total,theorem1_lhs,theorem1_rhs,serial_loss_ref\n";
    for (const SummaryRow& r : rows) {
        out << r.protocol << ',' << r.k << ',' << r.rounds << ',' << r.delta_or_b << ','
            << r.seed << ',' << format_g17(r.loss_cum) << ',' << r.messages_total << ','
            << r.bytes_total << ',' << r.violations_total << ',';
        if (r.theorem1_lhs) out << *r.theorem1_lhs;
        out << ',';
        if (r.theorem1_rhs) out << format_g17(*r.theorem1_rhs);
        out << ',' << format_g17(r.serial_loss_ref) << '\n';
    }
    return out.str();
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
    atomic_write(summary_csv(rows), path);
}

}  // namespace dynavg
