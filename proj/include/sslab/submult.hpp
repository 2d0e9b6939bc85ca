#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sslab/sumset.hpp"
#include "sslab/types.hpp"

namespace sslab {

using BigInt = boost::multiprecision::cpp_int;

/// Outcome of one sub-multiplicativity check: with B_i the sumset of all
/// sets except A_i, verifies |A_1+...+A_K|^(K-1) <= prod |B_i| exactly.
struct SubmultReport {
    std::size_t k = 0;
    std::uint64_t full_size = 0;            // |A_1 + ... + A_K|
    std::vector<std::uint64_t> leave_one_out_sizes;
    BigInt lhs;  // full_size^(K-1)
    BigInt rhs;  // product of leave-one-out sizes
    bool holds = false;
};

/// A violation here signals an engine bug, not a counterexample.
inline SubmultReport check_submultiplicativity(const std::vector<PointSet>& sets,
                                               const SumsetEngineConfig& cfg = {},
                                               WorkCounters* w = nullptr) {
    const std::size_t k = sets.size();
    if (k < 2) throw std::invalid_argument("check_submultiplicativity: need K >= 2 sets");
    for (const auto& s : sets) {
        if (s.dim() != 1)
            throw std::invalid_argument("check_submultiplicativity: sets must be 1-d");
        if (s.empty())
            throw std::invalid_argument("check_submultiplicativity: sets must be nonempty");
    }
    // Leave-one-out sumsets via prefix/suffix chains: B_i = P_{i-1} + S_{i+1}.
    std::vector<PointSet> prefix(k), suffix(k);
    prefix[0] = sets[0];
    for (std::size_t i = 1; i < k; ++i) prefix[i] = sumset(prefix[i - 1], sets[i], cfg, w);
    suffix[k - 1] = sets[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) suffix[i] = sumset(sets[i], suffix[i + 1], cfg, w);

    SubmultReport rep;
    rep.k = k;
    rep.full_size = prefix[k - 1].size();
    for (std::size_t i = 0; i < k; ++i) {
        PointSet bi = i == 0           ? suffix[1]
                      : i == k - 1     ? prefix[k - 2]
                                       : sumset(prefix[i - 1], suffix[i + 1], cfg, w);
        rep.leave_one_out_sizes.push_back(bi.size());
    }
    rep.lhs = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) rep.lhs *= rep.full_size;
    rep.rhs = 1;
    for (std::uint64_t b : rep.leave_one_out_sizes) rep.rhs *= b;
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace sslab
