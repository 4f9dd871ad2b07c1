#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpp/parallel.hpp"
#include "dpp/report.hpp"

namespace dpp {

/// Settings for the verification reports. Zero sizes mean "use the default".
struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 0;
    Execution exec{};
};

/// Names accepted by verify(): thm4.1 thm4.5 thm4.6 thm5.1 thm5.2 thm5.4 table15.
const std::vector<std::string>& verify_targets();

/// Design moments on several designs, the Republic centered square and the
/// Chebyshev exceedance over the 62 hyperplane blocks.
Report verify_thm41();
/// Sum-of-squares statistic at n = 500 (trials default 10^4).
Report verify_thm45(const VerifyOptions& opt);
/// Random-partition bound on Z_2^6 hyperplanes, eps = 0.5 (trials default 10^4),
/// plus the fixed pair-partition experiment on 50 points.
Report verify_thm46(const VerifyOptions& opt);
/// Beta tail numeric example and the Peizer-Pratt approximation.
Report verify_thm51();
/// S- on 2n = 10^4 points (trials default 10^3).
Report verify_thm52(const VerifyOptions& opt);
/// Balls in boxes at lambda = 2 with 10^5 boxes and theta at lambda = 50.
Report verify_thm54(const VerifyOptions& opt);
/// Limiting half-split discrepancy for lambda = 1..10 against the printed row.
Report verify_table15();

/// Dispatches on the target name; throws InvalidArgument on an unknown one.
Report verify(const std::string& target, const VerifyOptions& opt);

/// Centered square mu((f - 1/32)^2) of the normalized Republic column.
double republic_centered_square();

} // namespace dpp
