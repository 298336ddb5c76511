#include "axeuler/ledger.hpp"

namespace axeuler {

const std::vector<std::string>& ledger_column_names() {
    static const std::vector<std::string> names = {
        "t",      "E0",     "E1",     "E2",     "X1",     "X2",
        "Y1",     "Y2",     "W0",     "mass",   "rg_sup", "w_sup",
        "ghost_residual",
        "probe_near_drvf", "probe_near_wdrf", "probe_away_dtvv",
        "probe_away_divf", "probe_away_f",    "probe_dtG",
    };
    return names;
}

std::vector<double> ledger_row_values(const LedgerRow& r) {
    return {r.t,      r.E0,     r.E1,     r.E2,     r.X1,     r.X2,
            r.Y1,     r.Y2,     r.W0,     r.mass,   r.rg_sup, r.w_sup,
            r.ghost_residual,
            r.probe_near_drvf, r.probe_near_wdrf, r.probe_away_dtvv,
            r.probe_away_divf, r.probe_away_f,    r.probe_dtG};
}

} // namespace axeuler
