#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "j1j2/hamiltonian.hpp"
#include "j1j2/model.hpp"
#include "j1j2/sector.hpp"

namespace j1j2 {

inline Eigen::MatrixXd to_dense(const SectorOperator& op) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(op.dim),
                                              static_cast<Eigen::Index>(op.dim));
    for (std::size_t a = 0; a < op.dim; ++a) {
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = op.diag[a];
        for (std::size_t k = op.row_begin[a]; k < op.row_begin[a + 1]; ++k)
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(op.col[k])) += op.val[k];
    }
    return m;
}

struct DenseSectorSpectrum {
    int n_up = 0;
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd vectors;   // column i belongs to energies[i]
};

inline DenseSectorSpectrum dense_sector_spectrum(const ChainModel& model, const SzSector& sector) {
    const SectorOperator op = make_hamiltonian_operator(model, sector);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(op));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_sector_spectrum: eigensolver failed");
    return DenseSectorSpectrum{sector.n_up, es.eigenvalues(), es.eigenvectors()};
}

struct DenseLevel {
    double energy;
    int n_up;
    int index_in_sector;
};

/// Full eigensystem for small chains, diagonalized sector by sector.
/// Test oracle; refuses N > 10.
struct DenseSpectrum {
    int n_sites = 0;
    std::vector<DenseSectorSpectrum> sectors;  // indexed by n_up
    std::vector<SzSector> bases;
    std::vector<DenseLevel> levels;  // all 2^N levels, ascending

    const DenseSectorSpectrum& sector(int n_up) const { return sectors.at(static_cast<std::size_t>(n_up)); }

    /// Embed eigenvector `level` into the full 2^N product basis.
    std::vector<double> materialize(const DenseLevel& level) const {
        std::vector<double> full(std::size_t{1} << n_sites, 0.0);
        const auto& basis = bases.at(static_cast<std::size_t>(level.n_up));
        const auto& vec = sectors.at(static_cast<std::size_t>(level.n_up)).vectors.col(level.index_in_sector);
        for (std::size_t a = 0; a < basis.dimension(); ++a) full[basis.states[a]] = vec(static_cast<Eigen::Index>(a));
        return full;
    }
};

inline DenseSpectrum dense_spectrum(const ChainModel& model) {
    model.validate();
    if (model.n_sites > 10)
        throw std::invalid_argument("dense_spectrum: N too large for the dense oracle (max 10)");
    DenseSpectrum out;
    out.n_sites = model.n_sites;
    for (int n_up = 0; n_up <= model.n_sites; ++n_up) {
        SzSector sec = enumerate_sector(model.n_sites, n_up);
        out.sectors.push_back(dense_sector_spectrum(model, sec));
        for (int i = 0; i < static_cast<int>(sec.dimension()); ++i)
            out.levels.push_back({out.sectors.back().energies(i), n_up, i});
        out.bases.push_back(std::move(sec));
    }
    std::sort(out.levels.begin(), out.levels.end(),
              [](const DenseLevel& a, const DenseLevel& b) { return a.energy < b.energy; });
    return out;
}

}  // namespace j1j2
