// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_SELFCHECK_HPP
#define SICB_SELFCHECK_HPP

#include <cstdint>
#include <iosfwd>

namespace sicb {

/// Runs the randomized property suites (factorization identities, grid
/// rounding, range intersection, search-vs-enumeration equality, Dinkelbach
/// monotonicity) and prints one PASS/FAIL line per suite. Returns true when
/// everything passes.
bool run_self_checks(std::uint64_t seed, std::ostream& out);

} // namespace sicb

#endif
