#pragma once

#include <cstdint>

namespace chainsim {

//! Gas is fixed-point: 1'000'000 micro-units == 1.0 gas. Per-transaction
//! quantities (metered gas, estimates) live in [0, kGasUnit]; block-level
//! sums may exceed it. All arithmetic is exact integer arithmetic.
inline constexpr std::int64_t kGasUnit = 1'000'000;

struct GasAmount {
    std::int64_t micro{0};

    friend constexpr bool operator==(GasAmount, GasAmount) = default;
    friend constexpr auto operator<=>(GasAmount a, GasAmount b) { return a.micro <=> b.micro; }
    friend constexpr GasAmount operator+(GasAmount a, GasAmount b) { return {a.micro + b.micro}; }
    GasAmount& operator+=(GasAmount o) { micro += o.micro; return *this; }
};

} // namespace chainsim
