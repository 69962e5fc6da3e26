#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace j1j2 {

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// Basis of the fixed-magnetization subspace: all N-bit configurations with
/// exactly n_up set bits, enumerated in ascending integer order. Bit i set
/// means spin up (sigma_z = +1) at site i.
struct SzSector {
    int n_sites = 0;
    int n_up = 0;
    std::vector<std::uint32_t> states;

    std::size_t dimension() const { return states.size(); }

    /// Position of a configuration in the ascending enumeration.
    std::size_t index_of(std::uint32_t state) const {
        auto it = std::lower_bound(states.begin(), states.end(), state);
        if (it == states.end() || *it != state)
            throw std::out_of_range("SzSector: state not in sector");
        return static_cast<std::size_t>(it - states.begin());
    }
};

inline SzSector enumerate_sector(int n_sites, int n_up) {
    if (n_sites < 1 || n_sites > 24)
        throw std::invalid_argument("enumerate_sector: N out of range");
    if (n_up < 0 || n_up > n_sites)
        throw std::invalid_argument("enumerate_sector: n_up must be in [0,N], got " + std::to_string(n_up));
    SzSector s;
    s.n_sites = n_sites;
    s.n_up = n_up;
    s.states.reserve(binomial(n_sites, n_up));
    const std::uint32_t end = 1u << n_sites;
    for (std::uint32_t b = 0; b < end; ++b)
        if (std::popcount(b) == n_up) s.states.push_back(b);
    return s;
}

/// Index permutation implementing the global spin flip: entry i is the
/// position of the bit-complemented configuration within the sector of
/// N - n_up up spins. Applying the map twice is the identity.
inline std::vector<std::uint32_t> spin_flip_map(const SzSector& sector) {
    const std::uint32_t mask = (1u << sector.n_sites) - 1u;
    // complementing reverses the ascending order, so the map is a reversal
    std::vector<std::uint32_t> map(sector.dimension());
    const SzSector comp = enumerate_sector(sector.n_sites, sector.n_sites - sector.n_up);
    for (std::size_t i = 0; i < sector.dimension(); ++i)
        map[i] = static_cast<std::uint32_t>(comp.index_of((~sector.states[i]) & mask));
    return map;
}

}  // namespace j1j2
