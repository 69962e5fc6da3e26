#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <vector>

#include "j1j2/cache.hpp"
#include "j1j2/dense.hpp"
#include "j1j2/hamiltonian.hpp"
#include "j1j2/lanczos.hpp"
#include "j1j2/model.hpp"
#include "j1j2/sector.hpp"

namespace j1j2 {

struct EigenPair {
    double energy = 0.0;
    int n_up = 0;
    double s2 = 0.0;  // <S^2> expectation of the vector
    std::vector<double> vector;
};

enum class SpinClass { Singlet, Triplet, Higher };

/// S^2-expectation classes. Exact eigenstates give 0 (singlet), 2 (triplet),
/// 6, ... ; with anisotropic bonds S^2 is not conserved and the expectations
/// drift, so levels are binned by nearest class.
inline SpinClass classify_spin(double s2) {
    if (s2 < 1.0) return SpinClass::Singlet;
    if (s2 < 4.0) return SpinClass::Triplet;
    return SpinClass::Higher;
}

struct SolveOptions {
    int k = 6;                          // levels per sector
    double tol = 1e-12;                 // Lanczos residual tolerance
    std::size_t dense_threshold = 600;  // sectors at or below go through the dense solver
    bool check_multiplicity = true;     // probe for same-sector degenerate partners
    double deg_tol_scale = 1e-9;        // tol_deg = scale * max(1, |E0|)
    int max_iter = 5000;
    bool warn_degenerate_ground = true;
    const EigenpairCache* cache = nullptr;
};

/// Ground state plus the complete degenerate first-excited manifold,
/// with the singlet-triplet / singlet-singlet gaps used to locate the
/// level crossing.
struct SpectrumSlice {
    int n_sites = 0;
    std::vector<EigenPair> levels;  // all retained levels, ascending, mirror sectors included
    std::size_t ground_count = 0;   // leading levels within tol_deg of E0
    std::size_t excited_count = 0;  // size d of the first-excited manifold
    double tol_deg = 0.0;
    double gap = 0.0;                // E^(1) - E^(0)
    std::optional<double> gst;       // lowest triplet-class level - lowest singlet-class level
    std::optional<double> gss;       // second singlet-class level - lowest singlet-class level

    const EigenPair& ground() const { return levels.front(); }
    double ground_energy() const { return levels.front().energy; }
    bool ground_degenerate() const { return ground_count > 1; }
    int degeneracy() const { return static_cast<int>(excited_count); }

    std::vector<const EigenPair*> ground_manifold() const {
        std::vector<const EigenPair*> out;
        for (std::size_t i = 0; i < ground_count; ++i) out.push_back(&levels[i]);
        return out;
    }
    std::vector<const EigenPair*> excited_manifold() const {
        std::vector<const EigenPair*> out;
        for (std::size_t i = 0; i < excited_count; ++i) out.push_back(&levels[ground_count + i]);
        return out;
    }
};

namespace detail {

inline SectorSolution solve_sector(const ChainModel& model, int n_up, const SolveOptions& opt) {
    const std::uint64_t model_hash = model.hash();
    const SzSector sector = enumerate_sector(model.n_sites, n_up);
    const std::size_t dim = sector.dimension();
    const int k_eff = std::min<int>(opt.k, static_cast<int>(dim));

    if (opt.cache)
        if (auto hit = opt.cache->load(model_hash, n_up, k_eff, opt.tol)) return *hit;

    SectorSolution sol;
    sol.n_up = n_up;
    const SectorOperator s2op = make_s2_operator(model.n_sites, sector);

    if (dim <= opt.dense_threshold) {
        const DenseSectorSpectrum ds = dense_sector_spectrum(model, sector);
        const int keep = std::min<int>(static_cast<int>(dim), std::max(k_eff, opt.check_multiplicity ? k_eff + 2 : k_eff));
        for (int i = 0; i < keep; ++i) {
            sol.energies.push_back(ds.energies(i));
            std::vector<double> v(dim);
            for (std::size_t a = 0; a < dim; ++a) v[a] = ds.vectors(static_cast<Eigen::Index>(a), i);
            sol.s2.push_back(s2_expectation(s2op, v));
            sol.vectors.push_back(std::move(v));
        }
    } else {
        const SectorOperator hop = make_hamiltonian_operator(model, sector);
        auto apply = [&hop](std::span<const double> x, std::span<double> y) { hop.apply(x, y); };
        LanczosOptions lo;
        lo.k = k_eff;
        lo.tol = opt.tol;
        lo.max_iter = opt.max_iter;
        LanczosResult r = lanczos_lowest(apply, dim, lo);
        if (opt.check_multiplicity && static_cast<int>(dim) > k_eff) {
            // a single Krylov stream finds one copy per distinct eigenvalue;
            // one deflated continuation exposes same-sector partners
            LanczosOptions lo2 = lo;
            lo2.k = 2;
            LanczosResult extra = lanczos_lowest(apply, dim, lo2, r.vectors);
            for (std::size_t i = 0; i < extra.energies.size(); ++i) {
                r.energies.push_back(extra.energies[i]);
                r.vectors.push_back(std::move(extra.vectors[i]));
            }
            std::vector<std::size_t> order(r.energies.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return r.energies[a] < r.energies[b]; });
            LanczosResult merged;
            for (std::size_t i : order) {
                merged.energies.push_back(r.energies[i]);
                merged.vectors.push_back(std::move(r.vectors[i]));
            }
            r.energies = std::move(merged.energies);
            r.vectors = std::move(merged.vectors);
        }
        for (std::size_t i = 0; i < r.energies.size(); ++i) {
            sol.energies.push_back(r.energies[i]);
            sol.s2.push_back(s2_expectation(s2op, r.vectors[i]));
            sol.vectors.push_back(std::move(r.vectors[i]));
        }
    }

    if (opt.cache) opt.cache->store(model_hash, opt.tol, sol);
    return sol;
}

}  // namespace detail

/// Solve all magnetization sectors (n_up >= N/2 explicitly, the rest by the
/// global spin flip), merge levels, cluster degeneracies, and classify the
/// low levels by <S^2> to fill the singlet-triplet and singlet-singlet gaps.
inline SpectrumSlice solve_low_spectrum(const ChainModel& model, const SolveOptions& opt = {}) {
    model.validate();
    if (opt.k < 4) throw std::invalid_argument("solve_low_spectrum: k must be at least 4");
    if (model.j1 == 0.0 && model.j2 == 0.0)
        throw std::invalid_argument("solve_low_spectrum: zero couplings give a fully degenerate flat spectrum");

    SpectrumSlice slice;
    slice.n_sites = model.n_sites;

    for (int n_up = model.n_sites / 2; n_up <= model.n_sites; ++n_up) {
        SectorSolution sol = detail::solve_sector(model, n_up, opt);
        std::vector<std::uint32_t> flip;
        if (n_up > model.n_sites / 2)
            flip = spin_flip_map(enumerate_sector(model.n_sites, n_up));
        for (std::size_t i = 0; i < sol.energies.size(); ++i) {
            if (!flip.empty()) {
                EigenPair mirror;
                mirror.energy = sol.energies[i];
                mirror.n_up = model.n_sites - n_up;
                mirror.s2 = sol.s2[i];
                mirror.vector.resize(sol.vectors[i].size());
                for (std::size_t a = 0; a < flip.size(); ++a)
                    mirror.vector[flip[a]] = sol.vectors[i][a];
                slice.levels.push_back(std::move(mirror));
            }
            EigenPair p;
            p.energy = sol.energies[i];
            p.n_up = n_up;
            p.s2 = sol.s2[i];
            p.vector = std::move(sol.vectors[i]);
            slice.levels.push_back(std::move(p));
        }
    }

    std::sort(slice.levels.begin(), slice.levels.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.energy < b.energy; });

    const double e0 = slice.levels.front().energy;
    slice.tol_deg = opt.deg_tol_scale * std::max(1.0, std::abs(e0));

    std::size_t g = 1;
    while (g < slice.levels.size() && slice.levels[g].energy - e0 <= slice.tol_deg) ++g;
    slice.ground_count = g;
    if (g > 1 && opt.warn_degenerate_ground)
        std::fprintf(stderr,
                     "j1j2: warning: %zu-fold degenerate ground state (E0 = %.12g); "
                     "mixing the whole ground manifold\n",
                     g, e0);
    if (g >= slice.levels.size())
        throw std::runtime_error("solve_low_spectrum: no level above the ground manifold; increase k");

    const double e1 = slice.levels[g].energy;
    std::size_t d = 1;
    while (g + d < slice.levels.size() && slice.levels[g + d].energy - e1 <= slice.tol_deg) ++d;
    slice.excited_count = d;
    slice.gap = e1 - e0;

    // gaps between total-spin classes: gst = E_1^(0) - E_0^(0), gss = E_0^(1) - E_0^(0)
    std::optional<double> singlet0, singlet1, triplet0;
    for (const auto& lv : slice.levels) {
        switch (classify_spin(lv.s2)) {
            case SpinClass::Singlet:
                if (!singlet0)
                    singlet0 = lv.energy;
                else if (!singlet1)
                    singlet1 = lv.energy;
                break;
            case SpinClass::Triplet:
                if (!triplet0) triplet0 = lv.energy;
                break;
            case SpinClass::Higher:
                break;
        }
        if (singlet1 && triplet0) break;
    }
    if (singlet0 && triplet0) slice.gst = *triplet0 - *singlet0;
    if (singlet0 && singlet1) slice.gss = *singlet1 - *singlet0;
    return slice;
}

}  // namespace j1j2
