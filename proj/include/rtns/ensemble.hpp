#pragma once

#include "rtns/transfer1d.hpp"

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace rtns {

// Independent substream `stream` of a master seed. Substream seeds are derived
// with SplitMix64 over (seed, stream), then drive a mt19937_64; per-sample
// streams make results independent of the thread count.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream);
    double normal();  // standard normal
    double uniform();
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

// Haar-distributed unitary: complex Ginibre, QR, R-diagonal phase correction
Eigen::MatrixXcd haar_unitary(int dim, RngStream& rng);

// Sequentially generated random MPS; sites 0..n-2 have physical dimension d,
// the final site has dimension d*D
struct MpsState {
    int d = 2, D = 2, n = 2;
    // site[j][i]: bond_in x bond_out matrix for physical index i
    std::vector<std::vector<Eigen::MatrixXcd>> site;
    double norm_sq() const;
};
MpsState sample_mps(int n, const EnsembleParams& params, RngStream& rng);

// Sequentially generated random isoTNS on an m x n grid, kept dense.
// Rows are counted from the orthogonality hypersurface (row 1) upward; row m
// and column n are the boundary rows with enlarged site dimension.
struct IsoState {
    int m = 2, n = 2, d = 2, D = 2;
    Eigen::VectorXcd state;
    std::vector<int> reg_dims;               // register dims, creation order
    std::vector<std::vector<int>> site_regs;  // registers forming site (i,j), index (i-1)*n+(j-1)
    double norm_sq() const { return state.squaredNorm(); }
};
IsoState sample_isotns(int m, int n, const EnsembleParams& params, RngStream& rng);

// marginal on a contiguous site range [first, first+len) of an MPS
// (must not include the final site)
Eigen::MatrixXcd reduced_density(const MpsState& psi, int first, int len);
// joint marginal on [a0, a0+alen) and [b0, b0+blen), disjoint, a before b
Eigen::MatrixXcd reduced_density_pair(const MpsState& psi, int a0, int alen, int b0, int blen);
// marginal of an isoTNS on a list of sites (i, j), 1-based
Eigen::MatrixXcd reduced_density(const IsoState& psi, const std::vector<std::pair<int, int>>& sites);

enum class MeasureId { VnMi, RenyiMi, HsNorm, TraceDist, PurityA, PurityAB };

struct MeasureSample {
    MeasureId id;
    int alpha = 2;  // for RenyiMi
    double value = 0;
};

double vn_entropy(const Eigen::MatrixXcd& rho);
double renyi_entropy(const Eigen::MatrixXcd& rho, int alpha);
double purity(const Eigen::MatrixXcd& rho);

// measure between disjoint contiguous regions A, B of an MPS
MeasureSample measure(const MpsState& psi, int a0, int alen, int b0, int blen, MeasureId id,
                      int alpha = 2);

struct McResult {
    double mean = 0;
    double stderr_ = 0;
    long samples = 0;
    uint64_t seed = 0;
    std::vector<double> values;  // per-sample values (kept for bootstrap / tails)
};

struct McConfig {
    EnsembleParams params;
    RegionSpec region;       // geometry: n = c + a + r + b + f sites
    MeasureId measure = MeasureId::VnMi;
    int alpha = 2;
    long samples = 1000;
    uint64_t seed = 1;
    int threads = 1;
};

// mean and standard error of the configured measure over the MPS ensemble;
// deterministic for fixed seed and sample count, independent of threads
McResult mc_average(const McConfig& cfg);

// Monte-Carlo purity of a rectangular region of the isoTNS ensemble:
// columns c+1..c+a, rows 1..h
McResult mc_isotns_purity(int m, int n, int c, int a, int h, const EnsembleParams& params,
                          long samples, uint64_t seed, int threads = 1);

struct DecayExperimentResult {
    std::vector<int> r_values;
    std::vector<McResult> per_r;
    double xi_hat = 0;
    double xi_stderr = 0;  // bootstrap, 200 resamples
    double prefactor = 0;
};

// runs mc_average for each r, fits ln(mean) vs r, bootstraps the fit
DecayExperimentResult decay_experiment(const McConfig& base, const std::vector<int>& r_values);

struct TailRow {
    int r;
    double threshold;
    double exceed_fraction;
    double bound;
    double stderr_;
    bool pass;
};

// Markov-envelope check: fraction of samples with measure >= K exp(-(1-eps) r / xi)
// must stay below exp(-eps r / xi) (+3 binomial sigma). K is pinned from the
// exact transfer-matrix averages so the envelope is rigorous.
// measure: HsNorm (xi exponent) or TraceDist (2 xi exponent, bound eps r/(2 xi)).
std::vector<TailRow> tail_check(const McConfig& base, double eps, const std::vector<int>& r_values);

}  // namespace rtns
