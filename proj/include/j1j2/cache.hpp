#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace j1j2 {

/// Eigenpairs of one magnetization sector: energies ascending, unit-norm
/// vectors, and the matching <S^2> expectations.
struct SectorSolution {
    int n_up = 0;
    std::vector<double> energies;
    std::vector<double> s2;
    std::vector<std::vector<double>> vectors;
};

/// File-backed store of sector solutions keyed by (model hash, n_up).
///
/// Format (little-endian binary), one file per key, named
/// <hash:016x>_s<n_up>.edc:
///   magic   "J1J2EDC\0"            8 bytes
///   version u32                    currently 1
///   hash    u64                    ChainModel::hash() of the producer
///   tol     f64                    solver tolerance used
///   n_up    i32
///   k       i32                    number of stored levels
///   dim     u64                    sector dimension
///   k x f64                        energies
///   k x f64                        <S^2> values
///   k x dim x f64                  eigenvectors
/// A file whose magic, version, hash or tolerance does not match the request
/// is treated as a miss, never an error.
class EigenpairCache {
public:
    static constexpr std::uint32_t format_version = 1;

    explicit EigenpairCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    const std::filesystem::path& directory() const { return dir_; }

    std::optional<SectorSolution> load(std::uint64_t model_hash, int n_up, int min_levels,
                                       double tol) const {
        std::ifstream in(path_for(model_hash, n_up), std::ios::binary);
        if (!in) return std::nullopt;
        char magic[8];
        in.read(magic, 8);
        if (!in || std::string(magic, 8) != std::string(expected_magic(), 8)) return std::nullopt;
        std::uint32_t version = 0;
        std::uint64_t hash = 0;
        double stored_tol = 0;
        std::int32_t stored_n_up = 0, k = 0;
        std::uint64_t dim = 0;
        read(in, version);
        read(in, hash);
        read(in, stored_tol);
        read(in, stored_n_up);
        read(in, k);
        read(in, dim);
        if (!in || version != format_version || hash != model_hash || stored_tol != tol ||
            stored_n_up != n_up || k < min_levels)
            return std::nullopt;
        SectorSolution sol;
        sol.n_up = n_up;
        sol.energies.resize(static_cast<std::size_t>(k));
        sol.s2.resize(static_cast<std::size_t>(k));
        in.read(reinterpret_cast<char*>(sol.energies.data()), k * 8);
        in.read(reinterpret_cast<char*>(sol.s2.data()), k * 8);
        sol.vectors.assign(static_cast<std::size_t>(k), std::vector<double>(dim));
        for (auto& v : sol.vectors)
            in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(dim * 8));
        if (!in) return std::nullopt;
        return sol;
    }

    void store(std::uint64_t model_hash, double tol, const SectorSolution& sol) const {
        std::ofstream out(path_for(model_hash, sol.n_up), std::ios::binary | std::ios::trunc);
        if (!out) return;  // cache is best-effort
        out.write(expected_magic(), 8);
        write(out, format_version);
        write(out, model_hash);
        write(out, tol);
        write(out, static_cast<std::int32_t>(sol.n_up));
        write(out, static_cast<std::int32_t>(sol.energies.size()));
        write(out, static_cast<std::uint64_t>(sol.vectors.empty() ? 0 : sol.vectors.front().size()));
        out.write(reinterpret_cast<const char*>(sol.energies.data()),
                  static_cast<std::streamsize>(sol.energies.size() * 8));
        out.write(reinterpret_cast<const char*>(sol.s2.data()),
                  static_cast<std::streamsize>(sol.s2.size() * 8));
        for (const auto& v : sol.vectors)
            out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
    }

private:
    static const char* expected_magic() { return "J1J2EDC"; }  // includes trailing NUL

    std::filesystem::path path_for(std::uint64_t hash, int n_up) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx_s%d.edc", static_cast<unsigned long long>(hash), n_up);
        return dir_ / buf;
    }

    template <class T>
    static void read(std::istream& in, T& v) {
        in.read(reinterpret_cast<char*>(&v), sizeof v);
    }
    template <class T>
    static void write(std::ostream& out, const T& v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }

    std::filesystem::path dir_;
};

}  // namespace j1j2
