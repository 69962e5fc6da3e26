#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "j1j2/model.hpp"
#include "j1j2/sector.hpp"

namespace j1j2 {

namespace detail {

struct Bond {
    int i;
    int j;
    double zz;        // J_bond * delta_bond
    double exchange;  // 2 * J_bond
};

inline std::vector<Bond> bond_list(const ChainModel& m) {
    std::vector<Bond> bonds;
    bonds.reserve(2 * static_cast<std::size_t>(m.n_sites));
    for (int i = 0; i < m.n_sites; ++i)
        bonds.push_back({i, (i + 1) % m.n_sites, m.j1 * m.nn_delta[static_cast<std::size_t>(i)], 2.0 * m.j1});
    for (int i = 0; i < m.n_sites; ++i)
        bonds.push_back({i, (i + 2) % m.n_sites, m.j2 * m.nnn_delta[static_cast<std::size_t>(i)], 2.0 * m.j2});
    return bonds;
}

}  // namespace detail

/// H|v> within one magnetization sector, matrix-free. Each bond contributes
/// sx.sx + sy.sy + delta sz.sz scaled by its coupling: the z-z part is
/// diagonal with entries J*delta*(+-1)(+-1); the planar part exchanges
/// anti-aligned neighbour pairs with coefficient 2J.
inline void apply_hamiltonian(const ChainModel& model, const SzSector& sector,
                              std::span<const double> v, std::span<double> out) {
    model.validate();
    if (sector.n_sites != model.n_sites)
        throw std::invalid_argument("apply_hamiltonian: sector/model size mismatch");
    if (v.size() != sector.dimension() || out.size() != sector.dimension())
        throw std::invalid_argument("apply_hamiltonian: vector dimension mismatch");

    const auto bonds = detail::bond_list(model);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t a = 0; a < sector.dimension(); ++a) {
        const std::uint32_t b = sector.states[a];
        double diag = 0.0;
        for (const auto& bd : bonds) {
            const int zi = (b >> bd.i) & 1u ? 1 : -1;
            const int zj = (b >> bd.j) & 1u ? 1 : -1;
            diag += bd.zz * zi * zj;
            if (zi != zj && bd.exchange != 0.0) {
                const std::uint32_t b2 = b ^ (1u << bd.i) ^ (1u << bd.j);
                out[sector.index_of(b2)] += bd.exchange * v[a];
            }
        }
        out[a] += diag * v[a];
    }
}

inline std::vector<double> apply_hamiltonian(const ChainModel& model, const SzSector& sector,
                                             const std::vector<double>& v) {
    std::vector<double> out(v.size());
    apply_hamiltonian(model, sector, std::span<const double>(v), std::span<double>(out));
    return out;
}

/// Sparse symmetric operator assembled once per sector; used where the same
/// operator is applied many times (Lanczos, dense assembly). Row a holds the
/// off-diagonal couplings of basis state a; the matrix is symmetric so the
/// same rows serve as a gather list.
struct SectorOperator {
    std::size_t dim = 0;
    std::vector<double> diag;
    std::vector<std::size_t> row_begin;   // dim + 1
    std::vector<std::uint32_t> col;
    std::vector<double> val;

    void apply(std::span<const double> v, std::span<double> out) const {
        if (v.size() != dim || out.size() != dim)
            throw std::invalid_argument("SectorOperator::apply: dimension mismatch");
        for (std::size_t a = 0; a < dim; ++a) {
            double acc = diag[a] * v[a];
            for (std::size_t k = row_begin[a]; k < row_begin[a + 1]; ++k)
                acc += val[k] * v[col[k]];
            out[a] = acc;
        }
    }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(v.size());
        apply(std::span<const double>(v), std::span<double>(out));
        return out;
    }
};

namespace detail {

inline SectorOperator assemble_operator(const SzSector& sector, const std::vector<Bond>& bonds,
                                        double diag_shift = 0.0) {
    SectorOperator op;
    op.dim = sector.dimension();
    op.diag.assign(op.dim, diag_shift);
    op.row_begin.assign(op.dim + 1, 0);

    // first pass: diagonal and row counts
    for (std::size_t a = 0; a < op.dim; ++a) {
        const std::uint32_t b = sector.states[a];
        std::size_t nnz = 0;
        double diag = 0.0;
        for (const auto& bd : bonds) {
            const int zi = (b >> bd.i) & 1u ? 1 : -1;
            const int zj = (b >> bd.j) & 1u ? 1 : -1;
            diag += bd.zz * zi * zj;
            if (zi != zj && bd.exchange != 0.0) ++nnz;
        }
        op.diag[a] += diag;
        op.row_begin[a + 1] = nnz;
    }
    for (std::size_t a = 0; a < op.dim; ++a) op.row_begin[a + 1] += op.row_begin[a];
    op.col.resize(op.row_begin[op.dim]);
    op.val.resize(op.row_begin[op.dim]);

    std::vector<std::size_t> cursor(op.row_begin.begin(), op.row_begin.end() - 1);
    for (std::size_t a = 0; a < op.dim; ++a) {
        const std::uint32_t b = sector.states[a];
        for (const auto& bd : bonds) {
            const int zi = (b >> bd.i) & 1u ? 1 : -1;
            const int zj = (b >> bd.j) & 1u ? 1 : -1;
            if (zi != zj && bd.exchange != 0.0) {
                const std::uint32_t b2 = b ^ (1u << bd.i) ^ (1u << bd.j);
                op.col[cursor[a]] = static_cast<std::uint32_t>(sector.index_of(b2));
                op.val[cursor[a]] = bd.exchange;
                ++cursor[a];
            }
        }
    }
    return op;
}

}  // namespace detail

inline SectorOperator make_hamiltonian_operator(const ChainModel& model, const SzSector& sector) {
    model.validate();
    if (sector.n_sites != model.n_sites)
        throw std::invalid_argument("make_hamiltonian_operator: sector/model size mismatch");
    return detail::assemble_operator(sector, detail::bond_list(model));
}

/// Total-spin operator S^2 = (3N/4) I + 2 sum_{i<j} S_i . S_j in the spin-1/2
/// convention; eigenvalues S(S+1). Used to classify levels as singlet or
/// triplet after solving magnetization sectors.
inline SectorOperator make_s2_operator(int n_sites, const SzSector& sector) {
    if (sector.n_sites != n_sites)
        throw std::invalid_argument("make_s2_operator: sector size mismatch");
    // 2 S_i.S_j = (1/2) sigma_i.sigma_j: zz weight 1/2, exchange weight 1
    std::vector<detail::Bond> pairs;
    for (int i = 0; i < n_sites; ++i)
        for (int j = i + 1; j < n_sites; ++j) pairs.push_back({i, j, 0.5, 1.0});
    return detail::assemble_operator(sector, pairs, 0.75 * n_sites);
}

inline void apply_total_spin_squared(int n_sites, const SzSector& sector,
                                     std::span<const double> v, std::span<double> out) {
    make_s2_operator(n_sites, sector).apply(v, out);
}

inline std::vector<double> apply_total_spin_squared(int n_sites, const SzSector& sector,
                                                    const std::vector<double>& v) {
    std::vector<double> out(v.size());
    apply_total_spin_squared(n_sites, sector, std::span<const double>(v), std::span<double>(out));
    return out;
}

/// <v| S^2 |v> for a unit-norm sector vector.
inline double s2_expectation(const SectorOperator& s2op, std::span<const double> v) {
    std::vector<double> w(v.size());
    s2op.apply(v, std::span<double>(w));
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
    return acc;
}

}  // namespace j1j2
