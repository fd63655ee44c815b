#include "rtns/ensemble.hpp"

#include "rtns/spectra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rtns {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1))) {}

double RngStream::normal() { return gauss_(eng_); }
double RngStream::uniform() { return unif_(eng_); }

Eigen::MatrixXcd haar_unitary(int dim, RngStream& rng) {
    if (dim < 1) throw std::invalid_argument("dim >= 1");
    Eigen::MatrixXcd z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            z(i, j) = std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        std::complex<double> ph = r(j, j) / std::abs(r(j, j));
        q.col(j) *= ph;
    }
    return q;
}

namespace detail {
// M'[c,c'] = sum_i sum_{b,b'} M[b,b'] A[i](b,c) conj(A[i](b',c'))
Eigen::MatrixXcd env_step(const Eigen::MatrixXcd& m, const std::vector<Eigen::MatrixXcd>& tensors) {
    int dout = static_cast<int>(tensors[0].cols());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dout, dout);
    for (const auto& a : tensors) out += a.transpose() * m * a.conjugate();
    return out;
}
}  // namespace detail

double MpsState::norm_sq() const {
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& tensors : site) L = detail::env_step(L, tensors);
    return L(0, 0).real();
}

MpsState sample_mps(int n, const EnsembleParams& params, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("n >= 2 sites");
    int d = params.d, D = params.D;
    MpsState psi;
    psi.d = d;
    psi.D = D;
    psi.n = n;
    psi.site.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd u = haar_unitary(d * D, rng);
        // basis: |phys, bond> with index phys*D + bond; input is |0, b_in>
        if (j == n - 1) {
            // final site keeps the whole output register: physical dimension d*D
            psi.site[static_cast<size_t>(j)].resize(static_cast<size_t>(d) * D);
            for (int p = 0; p < d * D; ++p) {
                Eigen::MatrixXcd a(D, 1);
                for (int bin = 0; bin < D; ++bin) a(bin, 0) = u(p, bin);
                psi.site[static_cast<size_t>(j)][static_cast<size_t>(p)] = a;
            }
        } else {
            int din = (j == 0) ? 1 : D;
            psi.site[static_cast<size_t>(j)].resize(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) {
                Eigen::MatrixXcd a(din, D);
                for (int bin = 0; bin < din; ++bin)
                    for (int bout = 0; bout < D; ++bout)
                        a(bin, bout) = u(i * D + bout, (j == 0) ? 0 : bin);
                psi.site[static_cast<size_t>(j)][static_cast<size_t>(i)] = a;
            }
        }
    }
    return psi;
}

namespace {

using detail::env_step;

// product of site matrices over [first, first+len) for a multi-index
Eigen::MatrixXcd region_product(const MpsState& psi, int first, int len, long idx) {
    int d = psi.d;
    // digits: leftmost site = most significant
    std::vector<int> dig(static_cast<size_t>(len));
    for (int s = len - 1; s >= 0; --s) {
        dig[static_cast<size_t>(s)] = static_cast<int>(idx % d);
        idx /= d;
    }
    Eigen::MatrixXcd p = psi.site[static_cast<size_t>(first)][static_cast<size_t>(dig[0])];
    for (int s = 1; s < len; ++s)
        p = p * psi.site[static_cast<size_t>(first + s)][static_cast<size_t>(dig[static_cast<size_t>(s)])];
    return p;
}

long ipow(int base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

Eigen::MatrixXcd reduced_density(const MpsState& psi, int first, int len) {
    if (first < 0 || len < 1 || first + len > psi.n - 1)
        throw std::invalid_argument("region must lie before the final site");
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < first; ++j) L = env_step(L, psi.site[static_cast<size_t>(j)]);
    long dim = ipow(psi.d, len);
    Eigen::MatrixXcd rho(dim, dim);
    std::vector<Eigen::MatrixXcd> prods(static_cast<size_t>(dim));
    for (long i = 0; i < dim; ++i) prods[static_cast<size_t>(i)] = region_product(psi, first, len, i);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            // right environment is the identity by sequential generation
            rho(i, j) = (prods[static_cast<size_t>(i)].transpose() * L *
                         prods[static_cast<size_t>(j)].conjugate())
                            .trace();
        }
    return rho;
}

Eigen::MatrixXcd reduced_density_pair(const MpsState& psi, int a0, int alen, int b0, int blen) {
    if (a0 + alen > b0) throw std::invalid_argument("regions must be disjoint, A before B");
    if (b0 + blen > psi.n - 1) throw std::invalid_argument("B must lie before the final site");
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < a0; ++j) L = env_step(L, psi.site[static_cast<size_t>(j)]);
    long da = ipow(psi.d, alen), db = ipow(psi.d, blen);
    std::vector<Eigen::MatrixXcd> pa(static_cast<size_t>(da)), pb(static_cast<size_t>(db));
    for (long i = 0; i < da; ++i) pa[static_cast<size_t>(i)] = region_product(psi, a0, alen, i);
    for (long i = 0; i < db; ++i) pb[static_cast<size_t>(i)] = region_product(psi, b0, blen, i);

    // X[ia,ia'](c,c') = sum_{b,b'} L[b,b'] PA[ia](b,c) conj(PA[ia'](b',c')), then the
    // gap transfer acts on (c,c') like the left-environment step
    std::vector<Eigen::MatrixXcd> x(static_cast<size_t>(da * da));
    for (long i = 0; i < da; ++i)
        for (long j = 0; j < da; ++j)
            x[static_cast<size_t>(i * da + j)] =
                pa[static_cast<size_t>(i)].transpose() * L * pa[static_cast<size_t>(j)].conjugate();
    for (int g = a0 + alen; g < b0; ++g)
        for (auto& m : x) m = env_step(m, psi.site[static_cast<size_t>(g)]);

    Eigen::MatrixXcd rho(da * db, da * db);
    for (long ia = 0; ia < da; ++ia)
        for (long ja = 0; ja < da; ++ja) {
            const Eigen::MatrixXcd& m = x[static_cast<size_t>(ia * da + ja)];
            for (long ib = 0; ib < db; ++ib)
                for (long jb = 0; jb < db; ++jb)
                    rho(ia * db + ib, ja * db + jb) =
                        (pb[static_cast<size_t>(ib)].transpose() * m *
                         pb[static_cast<size_t>(jb)].conjugate())
                            .trace();
        }
    return rho;
}

IsoState sample_isotns(int m, int n, const EnsembleParams& params, RngStream& rng) {
    int d = params.d, D = params.D;
    double logdim = m * n * std::log2(static_cast<double>(d)) +
                    (m + n) * std::log2(static_cast<double>(D));
    if (logdim > 22.0) throw std::invalid_argument("isoTNS dense ceiling d^{mn} D^{m+n} <= 2^22");

    IsoState psi;
    psi.m = m;
    psi.n = n;
    psi.d = d;
    psi.D = D;
    psi.site_regs.assign(static_cast<size_t>(m) * n, {});
    psi.state = Eigen::VectorXcd::Ones(1);

    // registers: physical p(i,j); hbond(i) carries row i rightward; vbond(j)
    // carries column j upward; boundary rows/columns absorb the leftover bond
    std::vector<int> hreg(static_cast<size_t>(m) + 1, -1), vreg(static_cast<size_t>(n) + 1, -1);
    auto add_reg = [&](int dim) {
        int id = static_cast<int>(psi.reg_dims.size());
        psi.reg_dims.push_back(dim);
        Eigen::VectorXcd grown = Eigen::VectorXcd::Zero(psi.state.size() * dim);
        for (long i = 0; i < psi.state.size(); ++i) grown(i * dim) = psi.state(i);  // |0>
        psi.state = std::move(grown);
        return id;
    };
    auto apply_u = [&](const Eigen::MatrixXcd& u, const std::vector<int>& regs) {
        // strides in the row-major register order (register 0 most significant)
        long total = psi.state.size();
        std::vector<long> stride(psi.reg_dims.size(), 1);
        for (int i = static_cast<int>(psi.reg_dims.size()) - 2; i >= 0; --i)
            stride[static_cast<size_t>(i)] =
                stride[static_cast<size_t>(i + 1)] * psi.reg_dims[static_cast<size_t>(i + 1)];
        long blk = 1;
        for (int r : regs) blk *= psi.reg_dims[static_cast<size_t>(r)];
        if (u.rows() != blk) throw std::logic_error("unitary dim mismatch");
        // enumerate basis of the complement
        std::vector<int> other;
        for (int r = 0; r < static_cast<int>(psi.reg_dims.size()); ++r)
            if (std::find(regs.begin(), regs.end(), r) == regs.end()) other.push_back(r);
        long nother = total / blk;
        Eigen::VectorXcd scratch(blk);
        std::vector<long> offsets(static_cast<size_t>(blk));
        // offsets of the target block relative to a base index
        for (long bi = 0; bi < blk; ++bi) {
            long off = 0, x = bi;
            for (int ri = static_cast<int>(regs.size()) - 1; ri >= 0; --ri) {
                int r = regs[static_cast<size_t>(ri)];
                off += (x % psi.reg_dims[static_cast<size_t>(r)]) * stride[static_cast<size_t>(r)];
                x /= psi.reg_dims[static_cast<size_t>(r)];
            }
            offsets[static_cast<size_t>(bi)] = off;
        }
        for (long oi = 0; oi < nother; ++oi) {
            long base = 0, x = oi;
            for (int ri = static_cast<int>(other.size()) - 1; ri >= 0; --ri) {
                int r = other[static_cast<size_t>(ri)];
                base += (x % psi.reg_dims[static_cast<size_t>(r)]) * stride[static_cast<size_t>(r)];
                x /= psi.reg_dims[static_cast<size_t>(r)];
            }
            for (long bi = 0; bi < blk; ++bi) scratch(bi) = psi.state(base + offsets[static_cast<size_t>(bi)]);
            scratch = u * scratch;
            for (long bi = 0; bi < blk; ++bi) psi.state(base + offsets[static_cast<size_t>(bi)]) = scratch(bi);
        }
    };

    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            int p = add_reg(d);
            if (j == 1) hreg[static_cast<size_t>(i)] = add_reg(D);
            if (i == 1) vreg[static_cast<size_t>(j)] = add_reg(D);
            Eigen::MatrixXcd u = haar_unitary(d * D * D, rng);
            std::vector<int> target{p, hreg[static_cast<size_t>(i)], vreg[static_cast<size_t>(j)]};
            apply_u(u, target);
            auto& sr = psi.site_regs[static_cast<size_t>((i - 1) * n + (j - 1))];
            sr.push_back(p);
            if (i == m) sr.push_back(vreg[static_cast<size_t>(j)]);  // vertical leftover absorbed
            if (j == n) sr.push_back(hreg[static_cast<size_t>(i)]);  // horizontal leftover absorbed
        }
    }
    return psi;
}

Eigen::MatrixXcd reduced_density(const IsoState& psi,
                                 const std::vector<std::pair<int, int>>& sites) {
    std::vector<int> keep;
    for (auto [i, j] : sites) {
        if (i < 1 || i > psi.m || j < 1 || j > psi.n) throw std::invalid_argument("site out of grid");
        for (int r : psi.site_regs[static_cast<size_t>((i - 1) * psi.n + (j - 1))]) keep.push_back(r);
    }
    std::sort(keep.begin(), keep.end());
    long total = psi.state.size();
    std::vector<long> stride(psi.reg_dims.size(), 1);
    for (int i = static_cast<int>(psi.reg_dims.size()) - 2; i >= 0; --i)
        stride[static_cast<size_t>(i)] = stride[static_cast<size_t>(i + 1)] * psi.reg_dims[static_cast<size_t>(i + 1)];
    long dimA = 1;
    for (int r : keep) dimA *= psi.reg_dims[static_cast<size_t>(r)];
    if (dimA > (1L << 12)) throw std::invalid_argument("marginal dimension ceiling 2^12");
    // M[a, rest]
    Eigen::MatrixXcd mrep(dimA, total / dimA);
    std::vector<int> other;
    for (int r = 0; r < static_cast<int>(psi.reg_dims.size()); ++r)
        if (std::find(keep.begin(), keep.end(), r) == keep.end()) other.push_back(r);
    for (long idx = 0; idx < total; ++idx) {
        long a = 0, rest = 0;
        for (int r : keep) a = a * psi.reg_dims[static_cast<size_t>(r)] + (idx / stride[static_cast<size_t>(r)]) % psi.reg_dims[static_cast<size_t>(r)];
        for (int r : other) rest = rest * psi.reg_dims[static_cast<size_t>(r)] + (idx / stride[static_cast<size_t>(r)]) % psi.reg_dims[static_cast<size_t>(r)];
        mrep(a, rest) = psi.state(idx);
    }
    return mrep * mrep.adjoint();
}

namespace {

std::vector<double> clamped_spectrum(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    std::vector<double> ev;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        ev.push_back(v);
    }
    return ev;
}

}  // namespace

double vn_entropy(const Eigen::MatrixXcd& rho) {
    double s = 0;
    for (double v : clamped_spectrum(rho))
        if (v > 1e-14) s -= v * std::log(v);
    return s;
}

double renyi_entropy(const Eigen::MatrixXcd& rho, int alpha) {
    if (alpha < 2) throw std::invalid_argument("alpha >= 2");
    double t = 0;
    for (double v : clamped_spectrum(rho)) t += std::pow(v, alpha);
    return std::log(t) / (1.0 - alpha);
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

MeasureSample measure(const MpsState& psi, int a0, int alen, int b0, int blen, MeasureId id,
                      int alpha) {
    if (a0 + alen > b0) throw std::invalid_argument("regions overlap");
    Eigen::MatrixXcd rab = reduced_density_pair(psi, a0, alen, b0, blen);
    long da = ipow(psi.d, alen), db = ipow(psi.d, blen);
    // marginals of rho_AB
    Eigen::MatrixXcd ra = Eigen::MatrixXcd::Zero(da, da), rb = Eigen::MatrixXcd::Zero(db, db);
    for (long i = 0; i < da; ++i)
        for (long j = 0; j < da; ++j)
            for (long b = 0; b < db; ++b) ra(i, j) += rab(i * db + b, j * db + b);
    for (long i = 0; i < db; ++i)
        for (long j = 0; j < db; ++j)
            for (long a = 0; a < da; ++a) rb(i, j) += rab(a * db + i, a * db + j);

    MeasureSample out;
    out.id = id;
    out.alpha = alpha;
    switch (id) {
        case MeasureId::VnMi:
            out.value = vn_entropy(ra) + vn_entropy(rb) - vn_entropy(rab);
            break;
        case MeasureId::RenyiMi:
            out.value = renyi_entropy(ra, alpha) + renyi_entropy(rb, alpha) -
                        renyi_entropy(rab, alpha);
            break;
        case MeasureId::HsNorm: {
            Eigen::MatrixXcd diff = rab - Eigen::kroneckerProduct(ra, rb).eval();
            out.value = diff.squaredNorm();
            break;
        }
        case MeasureId::TraceDist: {
            Eigen::MatrixXcd diff = rab - Eigen::kroneckerProduct(ra, rb).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
            double s = 0;
            for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::abs(es.eigenvalues()(i));
            out.value = 0.5 * s;
            break;
        }
        case MeasureId::PurityA:
            out.value = purity(ra);
            break;
        case MeasureId::PurityAB:
            out.value = purity(rab);
            break;
    }
    return out;
}

namespace {

// deterministic parallel map: per-sample values land in a preallocated vector,
// reduction is sequential
std::vector<double> run_samples(long samples, int threads,
                                const std::function<double(long)>& fn) {
    std::vector<double> vals(static_cast<size_t>(samples));
    if (threads <= 1) {
        for (long i = 0; i < samples; ++i) vals[static_cast<size_t>(i)] = fn(i);
        return vals;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                long i = next.fetch_add(1);
                if (i >= samples) break;
                vals[static_cast<size_t>(i)] = fn(i);
            }
        });
    for (auto& th : pool) th.join();
    return vals;
}

McResult summarize(std::vector<double> vals, uint64_t seed) {
    McResult res;
    res.samples = static_cast<long>(vals.size());
    res.seed = seed;
    double s = 0;
    for (double v : vals) s += v;
    res.mean = s / static_cast<double>(vals.size());
    double ss = 0;
    for (double v : vals) ss += (v - res.mean) * (v - res.mean);
    res.stderr_ = std::sqrt(ss / (static_cast<double>(vals.size()) - 1) /
                            static_cast<double>(vals.size()));
    res.values = std::move(vals);
    return res;
}

}  // namespace

McResult mc_average(const McConfig& cfg) {
    if (cfg.samples < 2) throw std::invalid_argument("samples >= 2");
    const RegionSpec& g = cfg.region;
    int nsites = g.c + g.a + g.r + g.b + g.f;
    int a0 = g.c, b0 = g.c + g.a + g.r;
    auto vals = run_samples(cfg.samples, cfg.threads, [&](long i) {
        RngStream rng(cfg.seed, static_cast<uint64_t>(i));
        MpsState psi = sample_mps(nsites, cfg.params, rng);
        if (i % 100 == 0) {
            double nn = psi.norm_sq();
            if (std::abs(nn - 1.0) > 1e-10) throw std::runtime_error("state norm violation");
        }
        return measure(psi, a0, g.a, b0, g.b, cfg.measure, cfg.alpha).value;
    });
    return summarize(std::move(vals), cfg.seed);
}

McResult mc_isotns_purity(int m, int n, int c, int a, int h, const EnsembleParams& params,
                          long samples, uint64_t seed, int threads) {
    if (h > m - 1) throw std::invalid_argument("region height must leave a boundary row");
    if (c + a > n - 1) throw std::invalid_argument("region width must leave a boundary column");
    std::vector<std::pair<int, int>> sites;
    for (int i = 1; i <= h; ++i)
        for (int j = c + 1; j <= c + a; ++j) sites.emplace_back(i, j);
    auto vals = run_samples(samples, threads, [&](long i) {
        RngStream rng(seed, static_cast<uint64_t>(i));
        IsoState psi = sample_isotns(m, n, params, rng);
        if (i % 100 == 0) {
            double nn = psi.norm_sq();
            if (std::abs(nn - 1.0) > 1e-10) throw std::runtime_error("state norm violation");
        }
        return purity(reduced_density(psi, sites));
    });
    return summarize(std::move(vals), seed);
}

DecayExperimentResult decay_experiment(const McConfig& base, const std::vector<int>& r_values) {
    if (r_values.size() < 3) throw std::invalid_argument("need >= 3 r values");
    DecayExperimentResult out;
    out.r_values = r_values;
    std::vector<std::pair<double, double>> pts;
    for (size_t ri = 0; ri < r_values.size(); ++ri) {
        McConfig cfg = base;
        cfg.region.r = r_values[ri];
        cfg.seed = base.seed + 7919 * static_cast<uint64_t>(ri);  // independent streams per r
        out.per_r.push_back(mc_average(cfg));
        pts.emplace_back(r_values[ri], out.per_r.back().mean);
    }
    DecayFit fit = decay_extrapolate(pts);
    out.xi_hat = fit.xi;
    out.prefactor = fit.prefactor;

    // bootstrap over per-sample values, 200 resamples
    RngStream boot(base.seed, 0xb0075ULL);
    std::vector<double> xis;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::pair<double, double>> bpts;
        bool ok = true;
        for (size_t ri = 0; ri < r_values.size(); ++ri) {
            const auto& vals = out.per_r[ri].values;
            long nv = static_cast<long>(vals.size());
            double s = 0;
            for (long i = 0; i < nv; ++i)
                s += vals[static_cast<size_t>(static_cast<long>(boot.uniform() * nv) % nv)];
            double mean = s / static_cast<double>(nv);
            if (!(mean > 0)) { ok = false; break; }
            bpts.emplace_back(r_values[ri], mean);
        }
        if (!ok) continue;
        xis.push_back(decay_extrapolate(bpts).xi);
    }
    if (xis.size() > 1) {
        double m = 0;
        for (double x : xis) m += x;
        m /= static_cast<double>(xis.size());
        double ss = 0;
        for (double x : xis) ss += (x - m) * (x - m);
        out.xi_stderr = std::sqrt(ss / (static_cast<double>(xis.size()) - 1));
    }
    return out;
}

std::vector<TailRow> tail_check(const McConfig& base, double eps, const std::vector<int>& r_values) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps in (0,1)");
    if (base.measure != MeasureId::HsNorm && base.measure != MeasureId::TraceDist)
        throw std::invalid_argument("tail check supports hs_norm and trace_dist");
    bool trace_variant = base.measure == MeasureId::TraceDist;
    double xi = xi_closed_form(Dimension::One, base.params).xi;
    double xposure = trace_variant ? 2.0 * xi : xi;

    // pin K from the exact transfer-matrix averages over the tested r grid:
    // E N(r) <= K exp(-r/xi) (exactly), so the Markov envelope is rigorous
    double K = 0;
    for (int r : r_values) {
        RegionSpec reg = base.region;
        reg.r = r;
        double en = to_double(avg_hs_norm(reg, base.params));
        double kr = trace_variant
                        ? 0.5 * base.params.D * base.params.D * std::sqrt(en) * std::exp(r / (2.0 * xi))
                        : en * std::exp(r / xi);
        K = std::max(K, kr);
    }

    std::vector<TailRow> rows;
    for (int r : r_values) {
        McConfig cfg = base;
        cfg.region.r = r;
        cfg.seed = base.seed + 104729 * static_cast<uint64_t>(r);
        McResult res = mc_average(cfg);
        TailRow row;
        row.r = r;
        row.threshold = K * std::exp(-(1.0 - eps) * r / xposure);
        long exceed = 0;
        for (double v : res.values)
            if (v >= row.threshold) ++exceed;
        row.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(res.samples);
        row.bound = std::exp(-eps * r / xposure);
        row.stderr_ = std::sqrt(row.exceed_fraction * (1 - row.exceed_fraction) /
                                static_cast<double>(res.samples));
        row.pass = row.exceed_fraction <= row.bound + 3 * row.stderr_;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rtns
