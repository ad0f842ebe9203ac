// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_FLOPS_HPP
#define SICB_FLOPS_HPP

#include <cstdint>

namespace sicb {

/// Floating-point operation tally. Convention: one complex multiply counts as
/// 6 FLOPs, one complex add as 2, one real operation (add/mul/div/sqrt/trig)
/// as 1. Instrumentation happens at the operation level (factorizations,
/// quadratic forms, search node updates), not per machine instruction.
struct FlopCounter {
    std::uint64_t complex_mul = 0;
    std::uint64_t complex_add = 0;
    std::uint64_t real_op = 0;

    double total() const {
        return 6.0 * static_cast<double>(complex_mul) +
               2.0 * static_cast<double>(complex_add) +
               1.0 * static_cast<double>(real_op);
    }

    void merge(const FlopCounter& other) {
        complex_mul += other.complex_mul;
        complex_add += other.complex_add;
        real_op += other.real_op;
    }

    void reset() { complex_mul = complex_add = real_op = 0; }
};

} // namespace sicb

#endif
