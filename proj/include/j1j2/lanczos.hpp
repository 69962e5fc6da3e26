#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace j1j2 {

namespace detail {

/// splitmix64 finalizer; also used for counter-based seeding elsewhere.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline void axpy(double c, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

struct LanczosOptions {
    int k = 6;                  // low eigenpairs requested
    double tol = 1e-12;         // residual tolerance, relative to max(1,|theta|)
    int max_iter = 5000;
    std::uint64_t seed = 0x6a316a32656421ull;  // start-vector stream
    int check_interval = 10;
};

struct LanczosResult {
    std::vector<double> energies;              // ascending
    std::vector<std::vector<double>> vectors;  // orthonormal Ritz vectors
    int iterations = 0;
    std::vector<double> residuals;
    bool invariant_subspace = false;  // run ended by exhausting a Krylov space
};

/// One Lanczos run with full reorthogonalization for the lowest k eigenpairs
/// of a symmetric operator. Every new Krylov vector is reorthogonalized
/// against the whole stored basis (and optional deflation vectors), which
/// suppresses the ghost copies that would corrupt degeneracy counting. The
/// start vector comes from a fixed seeded stream, so repeated solves are
/// bit-identical.
///
/// If the Krylov space closes before k pairs converge (invariant subspace),
/// the pairs found so far are returned with invariant_subspace set; use
/// lanczos_lowest for the deflated continuation.
template <class Apply>
LanczosResult lanczos_run(const Apply& apply, std::size_t dim, const LanczosOptions& opt,
                          const std::vector<std::vector<double>>& deflate = {}) {
    const std::size_t space = dim - deflate.size();
    const int k = std::min<int>(opt.k, static_cast<int>(space));
    if (k <= 0) throw std::invalid_argument("lanczos_run: no eigenpairs requested");

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha;
    std::vector<double> beta{0.0};  // beta[j] couples v_{j-1}, v_j; beta[0] unused

    auto orthogonalize = [&](std::vector<double>& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : deflate) detail::axpy(-detail::dot(u, w), u, w);
            for (const auto& u : basis) detail::axpy(-detail::dot(u, w), u, w);
        }
    };

    std::vector<double> v(dim);
    {
        detail::SplitMix64 rng(opt.seed ^ detail::mix64(dim + 31u * deflate.size()));
        for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
        std::vector<std::vector<double>> none;
        for (const auto& u : deflate) detail::axpy(-detail::dot(u, v), u, v);
        const double n = detail::norm2(v);
        if (n < 1e-12) throw std::runtime_error("lanczos_run: degenerate start vector");
        for (auto& x : v) x /= n;
    }
    basis.push_back(std::move(v));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_solver;
    auto ritz_residuals = [&](std::vector<double>& residuals) -> bool {
        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i) + 1];
        }
        tri_solver.compute(T);
        const double beta_next =
            beta.size() > static_cast<std::size_t>(m) ? beta[static_cast<std::size_t>(m)] : 0.0;
        const int nres = std::min(k, m);
        residuals.assign(static_cast<std::size_t>(nres), 0.0);
        bool all = (m >= k);
        for (int i = 0; i < nres; ++i) {
            const double theta = tri_solver.eigenvalues()(i);
            const double r = std::abs(beta_next * tri_solver.eigenvectors()(m - 1, i));
            residuals[static_cast<std::size_t>(i)] = r;
            if (r > opt.tol * std::max(1.0, std::abs(theta))) all = false;
        }
        return all;
    };

    std::vector<double> w(dim);
    std::vector<double> residuals;
    int it = 0;
    bool exhausted = false;
    while (true) {
        if (it >= opt.max_iter) {
            std::string msg = "lanczos_run: no convergence after " + std::to_string(it) +
                              " iterations (dim " + std::to_string(dim) + "); residuals:";
            for (double r : residuals) msg += " " + std::to_string(r);
            throw std::runtime_error(msg);
        }
        const auto& vj = basis.back();
        apply(std::span<const double>(vj), std::span<double>(w));
        alpha.push_back(detail::dot(vj, w));
        ++it;

        if (basis.size() == space) {
            // Krylov space spans the deflated complement: T is exact
            exhausted = true;
            ritz_residuals(residuals);
            break;
        }

        detail::axpy(-alpha.back(), vj, w);
        if (basis.size() >= 2) detail::axpy(-beta.back(), basis[basis.size() - 2], w);
        orthogonalize(w);
        const double b = detail::norm2(w);

        if (b < 1e-10 * std::max(1.0, std::abs(alpha.back()))) {
            // invariant subspace of the start vector: Ritz pairs are exact
            exhausted = true;
            ritz_residuals(residuals);
            break;
        }

        beta.push_back(b);
        for (auto& x : w) x /= b;
        basis.push_back(w);

        if (static_cast<int>(alpha.size()) >= std::max(2 * k, 8) && it % opt.check_interval == 0 &&
            ritz_residuals(residuals))
            break;
    }

    const int m = static_cast<int>(alpha.size());
    LanczosResult out;
    out.iterations = it;
    out.residuals = residuals;
    out.invariant_subspace = exhausted;
    const int found = std::min(k, m);
    for (int i = 0; i < found; ++i) {
        out.energies.push_back(tri_solver.eigenvalues()(i));
        std::vector<double> ritz(dim, 0.0);
        for (int j = 0; j < m; ++j)
            detail::axpy(tri_solver.eigenvectors()(j, i), basis[static_cast<std::size_t>(j)], ritz);
        const double n = detail::norm2(ritz);
        for (auto& x : ritz) x /= n;
        out.vectors.push_back(std::move(ritz));
    }
    return out;
}

/// Lowest k eigenpairs, restarting with deflation whenever a run closes an
/// invariant subspace early. Guarantees k pairs (or dim, if smaller).
template <class Apply>
LanczosResult lanczos_lowest(const Apply& apply, std::size_t dim, const LanczosOptions& opt,
                             std::vector<std::vector<double>> deflate = {}) {
    const int k = std::min<int>(opt.k, static_cast<int>(dim - deflate.size()));
    LanczosResult acc;
    for (int round = 0; round < 8; ++round) {
        LanczosOptions o = opt;
        o.k = k - static_cast<int>(acc.energies.size());
        o.seed = opt.seed + static_cast<std::uint64_t>(round);
        LanczosResult r = lanczos_run(apply, dim, o, deflate);
        acc.iterations += r.iterations;
        acc.residuals = r.residuals;
        acc.invariant_subspace = r.invariant_subspace;
        for (std::size_t i = 0; i < r.energies.size(); ++i) {
            acc.energies.push_back(r.energies[i]);
            deflate.push_back(r.vectors[i]);
            acc.vectors.push_back(std::move(r.vectors[i]));
        }
        if (static_cast<int>(acc.energies.size()) >= k) break;
    }
    if (static_cast<int>(acc.energies.size()) < k)
        throw std::runtime_error("lanczos_lowest: failed to assemble requested eigenpairs");
    // deflated continuations may interleave energies; restore global order
    std::vector<std::size_t> order(acc.energies.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return acc.energies[a] < acc.energies[b]; });
    LanczosResult sorted;
    sorted.iterations = acc.iterations;
    sorted.residuals = acc.residuals;
    sorted.invariant_subspace = acc.invariant_subspace;
    for (std::size_t i : order) {
        sorted.energies.push_back(acc.energies[i]);
        sorted.vectors.push_back(std::move(acc.vectors[i]));
    }
    return sorted;
}

}  // namespace j1j2
