#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace j1j2 {

/// Periodic spin-1/2 chain with nearest (j1) and next-nearest (j2)
/// antiferromagnetic couplings and per-bond z-anisotropies.
///
/// Each bond term is sx.sx + sy.sy + delta * sz.sz in Pauli-matrix
/// convention, so energies are 4x the S=1/2 operator convention.
/// Bond (i, i+1 mod N) carries nn_delta[i]; bond (i, i+2 mod N)
/// carries nnn_delta[i].
struct ChainModel {
    int n_sites = 0;
    double j1 = 1.0;
    double j2 = 0.0;
    std::vector<double> nn_delta;
    std::vector<double> nnn_delta;

    static constexpr int min_sites = 6;
    static constexpr int max_sites = 16;

    /// Uniform anisotropy delta on every bond (delta = 1 is the isotropic chain).
    static ChainModel uniform(int n, double alpha, double delta = 1.0, double j1 = 1.0) {
        ChainModel m;
        m.n_sites = n;
        m.j1 = j1;
        m.j2 = alpha * j1;
        m.nn_delta.assign(static_cast<std::size_t>(n), delta);
        m.nnn_delta.assign(static_cast<std::size_t>(n), delta);
        m.validate();
        return m;
    }

    static ChainModel isotropic(int n, double alpha, double j1 = 1.0) {
        return uniform(n, alpha, 1.0, j1);
    }

    /// Disordered model: bond anisotropies 1 + offset, one independent
    /// offset per interaction term (nearest and next-nearest alike).
    static ChainModel disordered(int n, double alpha,
                                 const std::vector<double>& nn_offsets,
                                 const std::vector<double>& nnn_offsets,
                                 double j1 = 1.0) {
        ChainModel m;
        m.n_sites = n;
        m.j1 = j1;
        m.j2 = alpha * j1;
        if (static_cast<int>(nn_offsets.size()) != n || static_cast<int>(nnn_offsets.size()) != n)
            throw std::invalid_argument("disordered: offset arrays must have length N");
        m.nn_delta.resize(nn_offsets.size());
        m.nnn_delta.resize(nnn_offsets.size());
        for (std::size_t i = 0; i < nn_offsets.size(); ++i) m.nn_delta[i] = 1.0 + nn_offsets[i];
        for (std::size_t i = 0; i < nnn_offsets.size(); ++i) m.nnn_delta[i] = 1.0 + nnn_offsets[i];
        m.validate();
        return m;
    }

    double alpha() const {
        if (j1 <= 0.0) throw std::logic_error("alpha undefined: j1 must be positive");
        return j2 / j1;
    }

    bool uniform_delta() const {
        for (double d : nn_delta)
            if (d != nn_delta.front()) return false;
        for (double d : nnn_delta)
            if (d != nn_delta.front()) return false;
        return !nn_delta.empty();
    }

    bool isotropic_delta() const { return uniform_delta() && nn_delta.front() == 1.0; }

    void validate() const {
        if (n_sites % 2 != 0)
            throw std::invalid_argument("ChainModel: N must be even, got " + std::to_string(n_sites));
        if (n_sites < min_sites || n_sites > max_sites)
            throw std::invalid_argument("ChainModel: N must be in [6,16], got " + std::to_string(n_sites));
        if (j1 < 0.0 || j2 < 0.0)
            throw std::invalid_argument("ChainModel: couplings must be non-negative");
        if (static_cast<int>(nn_delta.size()) != n_sites || static_cast<int>(nnn_delta.size()) != n_sites)
            throw std::invalid_argument("ChainModel: per-bond delta arrays must have length N");
    }

    /// FNV-1a over the exact bit patterns of all parameters; used as the
    /// eigenpair cache key.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](const void* p, std::size_t n) {
            const auto* b = static_cast<const unsigned char*>(p);
            for (std::size_t i = 0; i < n; ++i) {
                h ^= b[i];
                h *= 1099511628211ull;
            }
        };
        std::int64_t n = n_sites;
        mix(&n, sizeof n);
        mix(&j1, sizeof j1);
        mix(&j2, sizeof j2);
        mix(nn_delta.data(), nn_delta.size() * sizeof(double));
        mix(nnn_delta.data(), nnn_delta.size() * sizeof(double));
        return h;
    }
};

}  // namespace j1j2
