#pragma once
// Per-diagnostic-time record of energies, transport audits and decay probes.

#include <string>
#include <vector>

namespace axeuler {

struct LedgerRow {
    double t = 0.0;
    double E0 = 0.0, E1 = 0.0, E2 = 0.0;
    double X1 = 0.0, X2 = 0.0;
    double Y1 = 0.0, Y2 = 0.0;
    double W0 = 0.0;
    double mass = 0.0;
    double rg_sup = 0.0;
    double w_sup = 0.0;
    double ghost_residual = 0.0;
    // sup-norm decay probes
    double probe_near_drvf = 0.0;   // sup |chi1 dr(v+f)|
    double probe_near_wdrf = 0.0;   // sup |chi1 <r-t>^{3/2} dr f| * <t>^{1/2}
    double probe_away_dtvv = 0.0;   // sup |chi0 dt vtilde|
    double probe_away_divf = 0.0;   // sup |chi0 (dr + 1/r) f|
    double probe_away_f = 0.0;      // sup |chi0 f|
    double probe_dtG = 0.0;         // sup |dt G|
};

struct EnergyLedger {
    std::vector<LedgerRow> rows;
};

const std::vector<std::string>& ledger_column_names();
std::vector<double> ledger_row_values(const LedgerRow& row);

} // namespace axeuler
