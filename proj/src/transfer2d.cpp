#include "rtns/transfer2d.hpp"

#include "rtns/spectra.hpp"
#include "rtns/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rtns {

Region2D::Region2D(int c_, int a_, int r_, int b_, int h_) : c(c_), a(a_), r(r_), b(b_), h(h_) {
    if (c < 0 || a < 1 || r < 0 || b < 1 || h < 1)
        throw std::invalid_argument("region requires c,r >= 0 and a,b,h >= 1");
}

TransferTensor2D::TransferTensor2D(int k, const EnsembleParams& params, const Permutation& rho)
    : k_(k), params_(params), rho_(rho) {
    if (k != 2 && k != 4) throw std::invalid_argument("bulk tensors support k in {2, 4}");
    if (rho.degree() != k) throw std::invalid_argument("rho degree != k");
    const GroupOrder& order = group_order(k);
    long q = static_cast<long>(params.d) * params.D * params.D;
    const WeingartenTable& wg = weingarten_table(k, q);
    n_ = order.size();
    int rho_idx = order.index_of(rho);

    std::vector<long> powd(static_cast<size_t>(k) + 1), powD(static_cast<size_t>(k) + 1);
    powd[0] = powD[0] = 1;
    for (int i = 1; i <= k; ++i) {
        powd[static_cast<size_t>(i)] = powd[static_cast<size_t>(i - 1)] * params.d;
        powD[static_cast<size_t>(i)] = powD[static_cast<size_t>(i - 1)] * params.D;
    }
    int nc = order.num_classes();
    core_.resize(static_cast<size_t>(n_) * n_ * n_);
    std::vector<long> acc(static_cast<size_t>(nc));
    for (int t = 0; t < n_; ++t) {
        int tinv = order.inverse_idx(t);
        for (int th = 0; th < n_; ++th) {
            int thinv = order.inverse_idx(th);
            for (int nu = 0; nu < n_; ++nu) {
                int nuinv = order.inverse_idx(nu);
                std::fill(acc.begin(), acc.end(), 0L);
                for (int s = 0; s < n_; ++s) {
                    int cls = order.class_of(order.compose_idx(s, tinv));
                    acc[static_cast<size_t>(cls)] +=
                        powd[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, rho_idx)))] *
                        powD[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, thinv)))] *
                        powD[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, nuinv)))];
                }
                Rat entry(0);
                for (int c = 0; c < nc; ++c)
                    if (acc[static_cast<size_t>(c)] != 0)
                        entry += wg.value_idx(order.class_rep(c)) * Rat(acc[static_cast<size_t>(c)]);
                core_[(static_cast<size_t>(t) * n_ + th) * n_ + nu] = entry;
            }
        }
    }
    cored_.resize(core_.size());
    for (size_t i = 0; i < core_.size(); ++i) cored_[i] = core_[i].get_d();
}

TransferTensor2D TransferTensor2D::with_swapped_bonds() const {
    TransferTensor2D t;
    t.k_ = k_;
    t.n_ = n_;
    t.params_ = params_;
    t.rho_ = rho_;
    t.core_.resize(core_.size());
    t.cored_.resize(cored_.size());
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c) {
                t.core_[(static_cast<size_t>(a) * n_ + b) * n_ + c] = core(a, c, b);
                t.cored_[(static_cast<size_t>(a) * n_ + b) * n_ + c] = core_d(a, c, b);
            }
    return t;
}

TransferTensor2D build_bulk(const Permutation& rho, int k, const EnsembleParams& params) {
    return TransferTensor2D(k, params, rho);
}

BoundaryTensor2D build_boundary(BoundaryKind kind, const Permutation& rho, int k,
                                const EnsembleParams& params) {
    if (k != 2 && k != 4) throw std::invalid_argument("boundary tensors support k in {2, 4}");
    if (rho.degree() != k) throw std::invalid_argument("rho degree != k");
    const GroupOrder& order = group_order(k);
    long q = static_cast<long>(params.d) * params.D * params.D;
    const WeingartenTable& wg = weingarten_table(k, q);
    int rho_idx = order.index_of(rho);
    BoundaryTensor2D out;
    out.kind = kind;
    out.k = k;
    out.params = params;
    out.rho = rho;
    switch (kind) {
        case BoundaryKind::Top:
        case BoundaryKind::Right:
            // identical entry tables; the open slot is horizontal (Top) or vertical (Right)
            out.matrix = transfer_matrix_weighted(order, wg, rho_idx,
                                                  static_cast<long>(params.d) * params.D, params.D);
            break;
        case BoundaryKind::Corner: {
            out.vec.assign(static_cast<size_t>(order.size()), Rat(0));
            std::vector<Rat> powq(static_cast<size_t>(k) + 1);
            powq[0] = 1;
            for (int i = 1; i <= k; ++i) powq[static_cast<size_t>(i)] = powq[static_cast<size_t>(i - 1)] * Rat(q);
            for (int t = 0; t < order.size(); ++t) {
                int tinv = order.inverse_idx(t);
                Rat v(0);
                for (int s = 0; s < order.size(); ++s)
                    v += wg.value_idx(order.compose_idx(s, tinv)) *
                         powq[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, rho_idx)))];
                out.vec[static_cast<size_t>(t)] = v;
            }
            break;
        }
    }
    return out;
}

CurlyTransfer::CurlyTransfer(const TransferTensor2D& bulk, int h)
    : bulk_(std::make_shared<TransferTensor2D>(bulk)), h_(h) {
    int k = bulk.k();
    int n = bulk.leg_dim();
    if (h < 1) throw std::invalid_argument("h >= 1 required");
    if (k == 2 && h > 8) throw std::invalid_argument("k=2 supports h <= 8");
    if (k == 4 && h > 3) throw std::invalid_argument("k=4 supports h <= 3");
    dim_ = 1;
    for (int i = 0; i < h; ++i) dim_ *= n;
    has_dense_ = (k == 2) || (k == 4 && h <= 2);
    if (!has_dense_) return;

    mat_ = RationalMatrix(static_cast<int>(dim_), static_cast<int>(dim_));
    std::vector<int> od(static_cast<size_t>(h)), id(static_cast<size_t>(h));
    for (long O = 0; O < dim_; ++O) {
        long x = O;
        for (int j = 0; j < h; ++j) {
            od[static_cast<size_t>(j)] = static_cast<int>(x % n);
            x /= n;
        }
        for (long I = 0; I < dim_; ++I) {
            long y = I;
            for (int j = 0; j < h; ++j) {
                id[static_cast<size_t>(j)] = static_cast<int>(y % n);
                y /= n;
            }
            Rat v(1);
            for (int j = 0; j < h && v != 0; ++j) {
                int onext = (j + 1 < h) ? od[static_cast<size_t>(j + 1)] : 0;
                v *= bulk.core(od[static_cast<size_t>(j)], id[static_cast<size_t>(j)], onext);
            }
            mat_(static_cast<int>(O), static_cast<int>(I)) = v;
        }
    }
}

const RationalMatrix& CurlyTransfer::matrix() const {
    if (!has_dense_) throw std::logic_error("no dense matrix at this size (k=4, h=3)");
    return mat_;
}

std::vector<Rat> CurlyTransfer::apply(const std::vector<Rat>& v) const {
    return matrix().apply(v);
}

namespace {
// the staircase works digit-major from the hypersurface; dense indexing keeps
// digit 1 least significant, so permute in and out
long digit_reverse(long idx, int n, int h) {
    long out = 0;
    for (int j = 0; j < h; ++j) {
        out = out * n + (idx % n);
        idx /= n;
    }
    return out;
}
}  // namespace

std::vector<double> CurlyTransfer::apply_float(const std::vector<double>& x_in) const {
    int n = bulk_->leg_dim();
    int h = h_;
    if (static_cast<long>(x_in.size()) != dim_) throw std::invalid_argument("vector size");
    std::vector<double> x(x_in.size());
    for (long i = 0; i < dim_; ++i)
        x[static_cast<size_t>(digit_reverse(i, n, h))] = x_in[static_cast<size_t>(i)];
    // staircase contraction: A_j[o_1..o_j, c; i_{j+1}..i_h], c the pending
    // vertical slot value of block j+1, flat layout o-major then c then i
    std::vector<double> cur(x), next;
    // shape bookkeeping: after step j, size = n^j (o's) * n (c) * n^{h-j} (i's)
    for (int j = 1; j <= h; ++j) {
        long no = 1;
        for (int i = 0; i < j - 1; ++i) no *= n;  // previous o-digits
        long ni = 1;
        for (int i = 0; i < h - j; ++i) ni *= n;  // remaining i-digits
        // cur layout (j-1 step): [o_1..o_{j-1}] x [c' = o_j] x [i_j, i_{j+1}..i_h]
        //   for j = 1: cur = x laid out as [i_1..i_h], treat c' dimension as absent
        next.assign(static_cast<size_t>(no) * n * n * ni, 0.0);
        // next layout: [o_1..o_{j-1}] x [o_j] x [c = o_{j+1}] x [i_{j+1}..i_h]
        for (long oo = 0; oo < no; ++oo)
            for (int oj = 0; oj < n; ++oj)
                for (int c = 0; c < n; ++c)
                    for (int ij = 0; ij < n; ++ij) {
                        double w = bulk_->core_d(oj, ij, c);
                        if (w == 0.0) continue;
                        for (long ii = 0; ii < ni; ++ii) {
                            size_t src;
                            if (j == 1)
                                src = static_cast<size_t>(ij) * ni + static_cast<size_t>(ii);
                            else
                                src = ((static_cast<size_t>(oo) * n + oj) * n + ij) * ni +
                                      static_cast<size_t>(ii);
                            size_t dst = (((static_cast<size_t>(oo) * n + oj) * n + c) * ni) +
                                         static_cast<size_t>(ii);
                            next[dst] += w * cur[src];
                        }
                    }
        cur.swap(next);
    }
    // final: [o_1..o_h] x [c]; keep c = e (index 0) and undo the digit reversal
    std::vector<double> out(static_cast<size_t>(dim_));
    for (long O = 0; O < dim_; ++O)
        out[static_cast<size_t>(digit_reverse(O, n, h))] = cur[static_cast<size_t>(O) * n];
    return out;
}

CurlyTransfer assemble_curly(const Permutation& rho, int k, int h, const EnsembleParams& params) {
    return CurlyTransfer(build_bulk(rho, k, params), h);
}

CurlyBoundary curly_boundary_vectors(int k, int h) {
    const GroupOrder& order = group_order(k);
    long dim = 1;
    for (int i = 0; i < h; ++i) dim *= order.size();
    CurlyBoundary cb;
    cb.initial.assign(static_cast<size_t>(dim), Rat(1));
    cb.final.assign(static_cast<size_t>(dim), Rat(0));
    cb.final[0] = 1;  // all digits e
    return cb;
}

namespace {

struct Word2D {
    std::vector<std::pair<Permutation, int>> factors;
};

Rat contract2d_exact(const Word2D& word, int k, int h, const EnsembleParams& params) {
    CurlyBoundary cb = curly_boundary_vectors(k, h);
    std::vector<Rat> v = cb.final;
    std::map<std::vector<uint8_t>, CurlyTransfer> built;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        const auto& [rho, power] = *it;
        if (power == 0) continue;
        auto fit = built.find(rho.images);
        if (fit == built.end())
            fit = built.emplace(rho.images, assemble_curly(rho, k, h, params)).first;
        for (int i = 0; i < power; ++i) v = fit->second.apply(v);
    }
    return inner(cb.initial, v);
}

double contract2d_float(const Word2D& word, int k, int h, const EnsembleParams& params) {
    const GroupOrder& order = group_order(k);
    long dim = 1;
    for (int i = 0; i < h; ++i) dim *= order.size();
    std::vector<double> v(static_cast<size_t>(dim), 0.0);
    v[0] = 1.0;
    std::map<std::vector<uint8_t>, CurlyTransfer> built;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        const auto& [rho, power] = *it;
        if (power == 0) continue;
        auto fit = built.find(rho.images);
        if (fit == built.end())
            fit = built.emplace(rho.images, assemble_curly(rho, k, h, params)).first;
        for (int i = 0; i < power; ++i) v = fit->second.apply_float(v);
    }
    double s = 0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

Avg2DResult avg_measures_2d(Measure2D measure, const Region2D& region, int k,
                            const EnsembleParams& params) {
    Avg2DResult res;
    res.measure = measure;
    int h = region.h;
    if (measure == Measure2D::Purity || measure == Measure2D::Renyi2) {
        if (k != 2) throw std::invalid_argument("purity/renyi2 use k = 2");
        Permutation e = Permutation::identity(2);
        Permutation x = Permutation::from_cycles("(1 2)", 2);
        if (measure == Measure2D::Purity) {
            res.exact = true;
            res.exact_value = contract2d_exact({{{e, region.c}, {x, region.a}}}, 2, h, params);
            res.value = to_double(res.exact_value);
        } else {
            res.exact = true;
            res.tr_ab2 = contract2d_exact(
                {{{e, region.c}, {x, region.a}, {e, region.r}, {x, region.b}}}, 2, h, params);
            res.tr_a2 = contract2d_exact({{{e, region.c}, {x, region.a}}}, 2, h, params);
            res.tr_b2 = contract2d_exact({{{e, region.c + region.a + region.r}, {x, region.b}}}, 2,
                                         h, params);
            Rat excess = res.tr_ab2 / (res.tr_a2 * res.tr_b2) - 1;
            res.value = std::log1p(to_double(excess));
        }
        return res;
    }
    // HsNorm: k = 4
    if (k != 4) throw std::invalid_argument("hsnorm uses k = 4");
    Permutation e = Permutation::identity(4);
    Permutation t12 = Permutation::from_cycles("(1 2)", 4);
    Permutation t34 = Permutation::from_cycles("(3 4)", 4);
    Permutation t13 = Permutation::from_cycles("(1 3)", 4);
    Word2D w1{{{e, region.c}, {t12, region.a}, {e, region.r}, {t12, region.b}}};
    Word2D w2{{{e, region.c}, {t12, region.a}, {e, region.r}, {t34, region.b}}};
    Word2D w3{{{e, region.c}, {t12, region.a}, {e, region.r}, {t13, region.b}}};
    if (h <= 2) {
        res.exact = true;
        res.exact_value = contract2d_exact(w1, 4, h, params) + contract2d_exact(w2, 4, h, params) -
                          2 * contract2d_exact(w3, 4, h, params);
        res.value = to_double(res.exact_value);
    } else {
        res.exact = false;
        res.value = contract2d_float(w1, 4, h, params) + contract2d_float(w2, 4, h, params) -
                    2 * contract2d_float(w3, 4, h, params);
    }
    return res;
}

namespace {

// grade of a multi-index: position (1-based) of the highest non-e digit; 0 if all e
int grade_of(long x, int n, int h) {
    int g = 0;
    for (int j = 1; j <= h; ++j) {
        if (x % n != 0) g = j;
        x /= n;
    }
    return g;
}

}  // namespace

Lemma2DReport lemma_checks(int k, int h, const EnsembleParams& params) {
    if (k == 2 && h > 6) throw std::invalid_argument("lemma checks support k=2 with h <= 6");
    if (k == 4 && h > 3) throw std::invalid_argument("lemma checks support k=4 with h <= 3");
    Lemma2DReport rep;
    rep.k = k;
    rep.h = h;
    rep.params = params;
    const GroupOrder& order = group_order(k);
    int n = order.size();
    long d = params.d, D = params.D;
    Rat beta = rat(d * D * D * D - d * D, d * d * D * D * D * D - 1);

    Permutation e = Permutation::identity(k);
    TransferTensor2D bulk = build_bulk(e, k, params);

    // first diagonal block of the curly transfer = core[.][.][e],
    // must match the 1D T_e with d -> dD exactly
    RationalMatrix N(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) N(a, b) = bulk.core(a, b, 0);
    {
        const WeingartenTable& wg = weingarten_table(k, d * D * D);
        RationalMatrix n1d = transfer_matrix_weighted(order, wg, 0, d * D, D);
        rep.first_block_matches = (N == n1d);
        if (!rep.first_block_matches) rep.notes.push_back("first block != T_e(d -> dD)");
    }

    bool dense_ok = (k == 2) || (k == 4 && h <= 2);
    if (dense_ok) {
        CurlyTransfer ct(bulk, h);
        const RationalMatrix& m = ct.matrix();
        long dim = ct.dim();

        // exact block triangularity: entry vanishes whenever grade(row) > grade(col)
        rep.triangular = true;
        for (long O = 0; O < dim && rep.triangular; ++O) {
            int go = grade_of(O, n, h);
            for (long I = 0; I < dim; ++I)
                if (go > grade_of(I, n, h) && m(static_cast<int>(O), static_cast<int>(I)) != 0) {
                    rep.triangular = false;
                    std::ostringstream os;
                    os << "nonzero lower block entry at (" << O << "," << I << ")";
                    rep.notes.push_back(os.str());
                    break;
                }
        }

        // spectra
        SpectrumReport spec = eigen_full(m.to_double());
        rep.lambda1_ok =
            std::abs(spec.leading().value - 1.0) <= 1e-8 && spec.leading().multiplicity == 1;
        double betad = to_double(beta);
        rep.lambda2_ok = dim > 1 && std::abs(spec.subleading().value - betad) <= 1e-8;
        rep.mult2_observed = dim > 1 ? spec.subleading().multiplicity : 0;
        rep.mult2_ok = (k == 2) ? (rep.mult2_observed == 1) : (rep.mult2_observed == 6);
    } else {
        // k = 4, h = 3: blockwise reduction licensed by the triangular structure.
        // Triangularity follows from the class-level zero pattern of N; verify it exactly.
        auto fixed_set_of = [&](int i) {
            uint8_t m = 0;
            for (int p = 0; p < k; ++p)
                if (order[i](p) == p) m |= static_cast<uint8_t>(1 << p);
            return m;
        };
        rep.triangular = true;
        for (int a = 0; a < n && rep.triangular; ++a)
            for (int b = 0; b < n; ++b) {
                int fa = order.fixed_idx(a), fb = order.fixed_idx(b);
                bool must_vanish = false;
                if (b == 0 && a != 0) must_vanish = true;                       // e column
                if (fb == k - 2 && a != 0 && a != b) must_vanish = true;        // transposition col
                if (fb == 1) {                                                  // single fixed point
                    if (fa == 0) must_vanish = true;
                    if (fa == 1 && fixed_set_of(a) != fixed_set_of(b)) must_vanish = true;
                }
                if (must_vanish && N(a, b) != 0) {
                    rep.triangular = false;
                    rep.notes.push_back("N zero pattern violated at (" +
                                        order[a].cycle_string() + "," + order[b].cycle_string() +
                                        ")");
                    break;
                }
            }
        // leading spectrum comes from the first block N, h-independent
        SpectrumReport spec = eigen_full(N.to_double());
        rep.lambda1_ok =
            std::abs(spec.leading().value - 1.0) <= 1e-8 && spec.leading().multiplicity == 1;
        double betad = to_double(beta);
        rep.lambda2_ok = std::abs(spec.subleading().value - betad) <= 1e-8;
        rep.mult2_observed = spec.subleading().multiplicity;
        rep.mult2_ok = rep.mult2_observed == 6;
    }

    // substochasticity / spectral bounds for blocks beyond the first
    if (k == 2) {
        // exact: for each 2 <= j <= h, block_j / beta is column substochastic:
        // entries >= 0 and every column sum < 1. block_j column ({i_{<j}}) sum =
        // (ones^T |B^(i_1)| ... |B^(i_{j-1})|)[cap = t] with B^(i)[o,w] = core[o][i][w].
        rep.substochastic = true;
        int t = 1;  // the transposition index for k = 2
        // entry nonnegativity of the bulk core (products stay nonnegative)
        for (int a = 0; a < n && rep.substochastic; ++a)
            for (int b = 0; b < n && rep.substochastic; ++b)
                for (int c = 0; c < n; ++c)
                    if (bulk.core(a, b, c) < 0) {
                        rep.substochastic = false;
                        rep.notes.push_back("negative bulk entry at k=2");
                        break;
                    }
        for (int j = 2; j <= h && rep.substochastic; ++j) {
            long cols = 1;
            for (int i = 0; i < j - 1; ++i) cols *= n;
            for (long I = 0; I < cols && rep.substochastic; ++I) {
                std::vector<Rat> v(static_cast<size_t>(n), Rat(1));  // ones row
                long x = I;
                for (int g = 1; g <= j - 1; ++g) {
                    int ig = static_cast<int>(x % n);
                    x /= n;
                    std::vector<Rat> w(static_cast<size_t>(n), Rat(0));
                    for (int o = 0; o < n; ++o)
                        for (int cc = 0; cc < n; ++cc)
                            w[static_cast<size_t>(cc)] += v[static_cast<size_t>(o)] * bulk.core(o, ig, cc);
                    v.swap(w);
                }
                if (!(v[static_cast<size_t>(t)] < 1)) {
                    rep.substochastic = false;
                    std::ostringstream os;
                    os << "k=2 block j=" << j << " column " << I << " sum = "
                       << v[static_cast<size_t>(t)].get_str() << " not < 1";
                    rep.notes.push_back(os.str());
                }
            }
        }
        rep.class3_bound_ok = rep.class4_bound_ok = rep.class4_spectral_ok = true;  // n/a at k = 2
    } else {
        // k = 4: exact column bound via |core| sums. u_g[w] = max_i sum_o u_{g-1}[o] |core[o][i][w]|
        // bounds every chain column sum; block spectral radius <= max_i sum_{o in S}
        // |N[o,i]| u_{j-1}[o] must be < beta for every class and 2 <= j <= h.
        rep.substochastic = true;
        std::vector<std::vector<Rat>> u(static_cast<size_t>(h) + 1);
        u[1].assign(static_cast<size_t>(n), Rat(0));  // u_1[w] = max_i sum_o |core[o][i][w]|
        for (int w = 0; w < n; ++w) {
            Rat best(0);
            for (int i = 0; i < n; ++i) {
                Rat s(0);
                for (int o = 0; o < n; ++o) s += abs(bulk.core(o, i, w));
                if (s > best) best = s;
            }
            u[1][static_cast<size_t>(w)] = best;
        }
        for (int g = 2; g <= h; ++g) {
            u[static_cast<size_t>(g)].assign(static_cast<size_t>(n), Rat(0));
            for (int w = 0; w < n; ++w) {
                Rat best(0);
                for (int i = 0; i < n; ++i) {
                    Rat s(0);
                    for (int o = 0; o < n; ++o)
                        s += u[static_cast<size_t>(g - 1)][static_cast<size_t>(o)] * abs(bulk.core(o, i, w));
                    if (s > best) best = s;
                }
                u[static_cast<size_t>(g)][static_cast<size_t>(w)] = best;
            }
        }
        // class partitions of non-identity elements by fixed-point count
        std::vector<std::vector<int>> classes;  // each transposition its own block; cls3; cls4
        for (int t : order.transposition_indices()) classes.push_back({t});
        std::vector<int> cls3, cls4;
        for (int i = 1; i < n; ++i) {
            if (order.fixed_idx(i) == 1) cls3.push_back(i);
            if (order.fixed_idx(i) == 0) cls4.push_back(i);
        }
        classes.push_back(cls3);
        classes.push_back(cls4);
        for (int j = 2; j <= h && rep.substochastic; ++j) {
            for (const auto& S : classes) {
                Rat worst(0);
                for (int i : S) {
                    Rat s(0);
                    for (int o : S) s += abs(N(o, i)) * u[static_cast<size_t>(j - 1)][static_cast<size_t>(o)];
                    if (s > worst) worst = s;
                }
                if (!(worst < beta)) {
                    rep.substochastic = false;
                    rep.notes.push_back("k=4 block bound >= beta at j=" + std::to_string(j));
                }
            }
        }

        // class prefactor bounds on N entries (the paper's beta/2 and beta/9 claims)
        Rat w3(0), w4(0);
        for (int a : cls3)
            for (int b : cls3)
                if (abs(N(a, b)) > w3) w3 = abs(N(a, b));
        for (int a : cls4)
            for (int b : cls4)
                if (abs(N(a, b)) > w4) w4 = abs(N(a, b));
        rep.class3_worst = w3;
        rep.class4_worst = w4;
        rep.class3_bound_ok = w3 < beta / 2;
        rep.class4_bound_ok = w4 < beta / 9;
        Rat colbound(0);
        for (int b : cls4) {
            Rat s(0);
            for (int a : cls4) s += abs(N(a, b));
            if (s > colbound) colbound = s;
        }
        rep.class4_column_bound = colbound;
        rep.class4_spectral_ok = colbound < beta;
        if (!rep.class4_bound_ok)
            rep.notes.push_back("class-4 prefactor bound beta/9 fails: worst |p| = " +
                                w4.get_str() + ", beta/9 = " + Rat(beta / 9).get_str() +
                                "; column bound " + colbound.get_str() + " < beta still certifies the gap");
    }
    return rep;
}

}  // namespace rtns
