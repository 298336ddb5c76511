#include "axeuler/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace axeuler {

std::string format_sci17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%23.16e", x);
    return std::string(buf);
}

void write_snapshot(const std::filesystem::path& path, const FieldState& s,
                    const EosSpec& eos) {
    std::ofstream out(path);
    if (!out) throw IoError("write_snapshot: cannot open " + path.string());
    out << "# axeuler snapshot\n";
    out << "t = " << format_sci17(s.t) << "\n";
    out << "n = " << s.p.size() << "\n";
    out << "h = " << format_sci17(s.p.grid->h) << "\n";
    out << "eos = " << eos.describe() << "\n";
    out << "# r p f g\n";
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        out << format_sci17(s.p.grid->r[j]) << " " << format_sci17(s.p[j]) << " "
            << format_sci17(s.f[j]) << " " << format_sci17(s.g[j]) << "\n";
    }
    if (!out) throw IoError("write_snapshot: write failed for " + path.string());
}

FieldState read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_snapshot: cannot open " + path.string());
    std::string line;
    double t = 0.0, h = 0.0;
    std::size_t n = 0;
    // header
    while (std::getline(in, line)) {
        if (line.rfind("# r p f g", 0) == 0) break;
        std::istringstream ls(line);
        std::string key, eq;
        if (line.rfind("#", 0) == 0) continue;
        ls >> key >> eq;
        if (key == "t") ls >> t;
        else if (key == "n") ls >> n;
        else if (key == "h") ls >> h;
        // eos descriptor is informational
    }
    if (n == 0 || h <= 0.0) throw IoError("read_snapshot: bad header in " + path.string());
    GridPtr grid = make_grid(h * static_cast<double>(n), n);
    FieldState s = make_state(grid, t);
    for (std::size_t j = 0; j < n; ++j) {
        double r, p, f, g;
        if (!(in >> r >> p >> f >> g))
            throw IoError("read_snapshot: truncated data in " + path.string());
        s.p[j] = p;
        s.f[j] = f;
        s.g[j] = g;
    }
    return s;
}

void write_ledger_csv(const std::filesystem::path& path, const EnergyLedger& ledger) {
    std::ofstream out(path);
    if (!out) throw IoError("write_ledger_csv: cannot open " + path.string());
    const auto& names = ledger_column_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out << ",";
        out << names[i];
    }
    out << "\n";
    for (const LedgerRow& row : ledger.rows) {
        const auto vals = ledger_row_values(row);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out << ",";
            out << format_sci17(vals[i]);
        }
        out << "\n";
    }
    if (!out) throw IoError("write_ledger_csv: write failed for " + path.string());
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("write_manifest: cannot open " + tmp.string());
        for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
        if (!out) throw IoError("write_manifest: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string snapshot_file_name(const std::string& run_id, std::size_t index) {
    return "snap_" + run_id + "_" + std::to_string(index);
}

} // namespace axeuler
