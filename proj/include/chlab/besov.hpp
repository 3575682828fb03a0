#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab::besov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smooth cutoff: 1 on |k| <= 3/4, 0 on |k| >= 4/3, C-infinity in between
/// (exp(-1/x) glue). Values in [0,1].
double chi(double k);
/// Annular profile phi(k) = chi(k/2) - chi(k), supported in 3/4 <= |k| <= 8/3.
double phi(double k);

/// Littlewood-Paley multipliers sampled on the real-FFT bins of a grid.
///
/// Block -1 is chi (it carries the mean); block j >= 0 is phi(2^-j k).
/// The last block J is the first whose partial sum covers the Nyquist
/// frequency, so the blocks add up to 1 on every resolved bin.
class FilterBank {
public:
    /// Throws InvalidArgument if the grid cannot host at least three blocks.
    explicit FilterBank(const Grid1D& grid);

    const Grid1D& grid() const noexcept { return grid_; }
    int max_block() const noexcept { return max_block_; }           // J
    std::size_t block_count() const noexcept { return profiles_.size(); }  // J + 2

    /// Multiplier of block j (-1 <= j <= J) on bins 0..N/2.
    std::span<const double> profile(int j) const;
    /// chi + sum_j phi_j at bin m.
    double partition_sum(std::size_t m) const;

private:
    Grid1D grid_;
    int max_block_;
    std::vector<std::vector<double>> profiles_;
};

/// Delta_j u for j = -1..J (index 0 holds block -1).
std::vector<std::vector<double>> blocks(std::span<const double> u, const FilterBank& bank);

/// ||Delta_j u||_{L^p} for every block, trapezoid quadrature.
std::vector<double> block_lp_norms(std::span<const double> u, const FilterBank& bank, double p);

struct BesovProfile {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;
    std::vector<double> blocks;  // a_j = 2^{js} ||Delta_j u||_{L^p}, j = -1..J
    double norm = 0.0;
};

/// l^r aggregation of 2^{js} times the given block norms (r = kInf for sup).
BesovProfile aggregate(std::span<const double> block_norms, double s, double p, double r);

BesovProfile besov_norm(std::span<const double> u, double s, double p, double r, const FilterBank& bank);

/// Convenience: the critical norm B^{1+1/p}_{p,1}.
double critical_norm(std::span<const double> u, double p, const FilterBank& bank);

/// Random band-limited mixtures of modulated Gaussians, deterministic in seed.
std::vector<std::vector<double>> random_corpus(const Grid1D& grid, std::size_t count, std::uint64_t seed);

struct AuditRow {
    std::string inequality;
    std::string param_set;
    double empirical_C = 0.0;  // max over the corpus of LHS / RHS-with-C=1
};

struct AuditOptions {
    std::vector<double> ps{1.0, 2.0, 3.0, 4.0};
    std::vector<double> rs{1.0, 2.0, kInf};
    /// (s1, s2, lambda) triples for the interpolation inequalities.
    std::vector<std::array<double, 3>> interpolation{{0.5, 1.5, 0.5}, {0.0, 2.0, 0.25}, {1.0, 2.5, 0.75}};
    double log_epsilon = 0.5;
};

/// Empirical constants for the interpolation, logarithmic interpolation,
/// product (algebra) and Moser-type estimates over a corpus.
std::vector<AuditRow> inequality_audit(std::span<const std::vector<double>> corpus, const FilterBank& bank,
                                       const AuditOptions& opts = {});

}  // namespace chlab::besov
