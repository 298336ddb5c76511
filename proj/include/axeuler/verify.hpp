#pragma once
// Fast invariant suite behind the `verify` subcommand: structural identities
// on small fixed scenarios, meant to finish in well under a minute.

#include <string>
#include <vector>

namespace axeuler {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<VerifyCheck> run_verify_suite();

} // namespace axeuler
