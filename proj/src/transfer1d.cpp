#include "rtns/transfer1d.hpp"

#include "rtns/weingarten.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rtns {

EnsembleParams::EnsembleParams(int d_, int D_) : d(d_), D(D_) {
    if (d < 2 || D < 2) throw std::invalid_argument("require d >= 2 and D >= 2");
}

RegionSpec::RegionSpec(int c_, int a_, int r_, int b_, int f_)
    : c(c_), a(a_), r(r_), b(b_), f(f_) {
    if (c < 0 || a < 1 || r < 0 || b < 1 || f < 1)
        throw std::invalid_argument("region requires c,r >= 0 and a,b,f >= 1");
}

// per-entry sum over sigma, grouped by cycle type of sigma tau^-1 so the
// integer weight accumulates in int64 and only ~#classes rational ops remain
RationalMatrix transfer_matrix_weighted(const GroupOrder& order, const WeingartenTable& wg,
                                        int rho_idx, long dphys, long dbond) {
    int n = order.size();
    int k = order.k();
    // overflow guard for the int64 accumulation path
    long double bound = 1.0L;
    for (int i = 0; i < k; ++i) bound *= static_cast<long double>(dphys) * dbond;
    bound *= n;
    bool fits = bound < 4.0e18L;

    std::vector<long> powd(static_cast<size_t>(k) + 1), powD(static_cast<size_t>(k) + 1);
    powd[0] = powD[0] = 1;
    for (int i = 1; i <= k; ++i) {
        powd[static_cast<size_t>(i)] = powd[static_cast<size_t>(i - 1)] * dphys;
        powD[static_cast<size_t>(i)] = powD[static_cast<size_t>(i - 1)] * dbond;
    }

    int nc = order.num_classes();
    RationalMatrix m(n, n);
    std::vector<long> acc(static_cast<size_t>(nc));
    std::vector<Rat> acc_q(static_cast<size_t>(nc));
    for (int t = 0; t < n; ++t) {
        int tinv = order.inverse_idx(t);
        for (int th = 0; th < n; ++th) {
            int thinv = order.inverse_idx(th);
            if (fits) {
                std::fill(acc.begin(), acc.end(), 0L);
                for (int s = 0; s < n; ++s) {
                    int cls = order.class_of(order.compose_idx(s, tinv));
                    long w = powd[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, rho_idx)))] *
                             powD[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, thinv)))];
                    acc[static_cast<size_t>(cls)] += w;
                }
                Rat entry(0);
                for (int c = 0; c < nc; ++c)
                    if (acc[static_cast<size_t>(c)] != 0)
                        entry += wg.value_idx(order.class_rep(c)) * Rat(acc[static_cast<size_t>(c)]);
                m(t, th) = entry;
            } else {
                std::fill(acc_q.begin(), acc_q.end(), Rat(0));
                for (int s = 0; s < n; ++s) {
                    int cls = order.class_of(order.compose_idx(s, tinv));
                    Rat w = Rat(powd[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, rho_idx)))]) *
                            Rat(powD[static_cast<size_t>(order.cycles_idx(order.compose_idx(s, thinv)))]);
                    acc_q[static_cast<size_t>(cls)] += w;
                }
                Rat entry(0);
                for (int c = 0; c < nc; ++c) entry += wg.value_idx(order.class_rep(c)) * acc_q[static_cast<size_t>(c)];
                m(t, th) = entry;
            }
        }
    }
    return m;
}

TransferMatrix1D build_transfer(const Permutation& rho, int k, const EnsembleParams& params) {
    if (k < 1 || k > 7) throw std::invalid_argument("transfer matrices limited to k <= 7");
    if (rho.degree() != k) throw std::invalid_argument("rho degree != k");
    const GroupOrder& order = group_order(k);
    const WeingartenTable& wg = weingarten_table(k, static_cast<long>(params.d) * params.D);
    RationalMatrix m = transfer_matrix_weighted(order, wg, order.index_of(rho), params.d, params.D);
    return TransferMatrix1D{k, params, rho, std::move(m)};
}

BoundaryVectors boundary_vectors(int k) {
    const GroupOrder& order = group_order(k);
    BoundaryVectors bv;
    bv.initial.assign(static_cast<size_t>(order.size()), Rat(1));
    bv.final.assign(static_cast<size_t>(order.size()), Rat(0));
    bv.final[static_cast<size_t>(order.index_of(Permutation::identity(k)))] = 1;
    return bv;
}

Rat contract(const TransferWord& word, int k, const EnsembleParams& params) {
    for (const auto& [rho, p] : word) {
        if (rho.degree() != k) throw std::invalid_argument("word degree mismatch");
        if (p < 0) throw std::invalid_argument("negative power");
    }
    BoundaryVectors bv = boundary_vectors(k);
    std::vector<Rat> v = bv.final;
    std::map<std::vector<uint8_t>, RationalMatrix> built;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const auto& [rho, power] = *it;
        if (power == 0) continue;
        auto fit = built.find(rho.images);
        if (fit == built.end())
            fit = built.emplace(rho.images, build_transfer(rho, k, params).matrix).first;
        for (int i = 0; i < power; ++i) v = fit->second.apply(v);
    }
    return inner(bv.initial, v);
}

Renyi2Terms avg_renyi2_mi(const RegionSpec& region, const EnsembleParams& params) {
    Permutation e = Permutation::identity(2);
    Permutation x = Permutation::from_cycles("(1 2)", 2);
    Renyi2Terms t;
    t.tr_ab2 = contract({{e, region.c}, {x, region.a}, {e, region.r}, {x, region.b}}, 2, params);
    t.tr_a2 = contract({{e, region.c}, {x, region.a}}, 2, params);
    t.tr_b2 = contract({{e, region.c + region.a + region.r}, {x, region.b}}, 2, params);
    // evaluate as log1p of the exact ratio to avoid catastrophic cancellation
    Rat excess = t.tr_ab2 / (t.tr_a2 * t.tr_b2) - 1;
    t.mi = std::log1p(to_double(excess));
    return t;
}

Rat avg_hs_norm(const RegionSpec& region, const EnsembleParams& params) {
    Permutation e = Permutation::identity(4);
    Permutation t12 = Permutation::from_cycles("(1 2)", 4);
    Permutation t34 = Permutation::from_cycles("(3 4)", 4);
    Permutation t13 = Permutation::from_cycles("(1 3)", 4);
    Rat v1 = contract({{e, region.c}, {t12, region.a}, {e, region.r}, {t12, region.b}}, 4, params);
    Rat v2 = contract({{e, region.c}, {t12, region.a}, {e, region.r}, {t34, region.b}}, 4, params);
    Rat v3 = contract({{e, region.c}, {t12, region.a}, {e, region.r}, {t13, region.b}}, 4, params);
    return v1 + v2 - 2 * v3;
}

Rat avg_renyi_alpha_trace(int alpha, const RegionSpec& region, const EnsembleParams& params,
                          bool joint_ab) {
    if (alpha < 1 || alpha > 6) throw std::invalid_argument("alpha out of supported range [1,6]");
    if (alpha == 1) return Rat(1);  // trace of a density matrix
    std::vector<uint8_t> img(static_cast<size_t>(alpha));
    for (int i = 0; i < alpha; ++i) img[static_cast<size_t>(i)] = static_cast<uint8_t>((i + 1) % alpha);
    Permutation x(img);  // x(i) = i+1 mod alpha
    Permutation e = Permutation::identity(alpha);
    TransferWord w{{e, region.c}, {x, region.a}};
    if (joint_ab) {
        w.push_back({e, region.r});
        w.push_back({x, region.b});
    }
    return contract(w, alpha, params);
}

StructuralReport structural_checks(int k, const EnsembleParams& params) {
    if (k < 2 || k > 5) throw std::invalid_argument("structural checks support 2 <= k <= 5");
    StructuralReport rep;
    const GroupOrder& order = group_order(k);
    int n = order.size();
    Permutation e = Permutation::identity(k);
    RationalMatrix ck = build_transfer(e, k, params).matrix;
    auto fail = [&](const std::string& what, int t, int th) {
        std::ostringstream os;
        os << what << " at k=" << k << " d=" << params.d << " D=" << params.D
           << " tau=" << order[t].cycle_string() << " theta=" << order[th].cycle_string();
        rep.failures.push_back(os.str());
    };

    // conjugacy covariance, all pi
    rep.conjugacy_covariance = true;
    for (int p = 0; p < n && rep.conjugacy_covariance; ++p) {
        const Permutation& pi = order[p];
        for (int t = 0; t < n; ++t) {
            int tc = order.index_of(conjugate(order[t], pi));
            for (int th = 0; th < n; ++th) {
                int thc = order.index_of(conjugate(order[th], pi));
                if (ck(t, th) != ck(tc, thc)) {
                    rep.conjugacy_covariance = false;
                    fail("conjugacy covariance (pi=" + pi.cycle_string() + ")", t, th);
                    break;
                }
            }
            if (!rep.conjugacy_covariance) break;
        }
    }

    // block recursion onto C_{k-1} for columns fixing k.
    // This identity is a theorem of the Gram-inverse Weingarten function and
    // holds only when k <= dD; outside that range it is evaluated for the
    // record but excluded from all().
    rep.recursion_applicable = k <= params.d * params.D;
    rep.block_recursion = true;
    {
        const GroupOrder& sub = group_order(k - 1);
        RationalMatrix csub =
            build_transfer(Permutation::identity(k - 1), k - 1, params).matrix;  // C_1 = [1]
        auto restrict_down = [&](const Permutation& p) {
            std::vector<uint8_t> img(p.images.begin(), p.images.end() - 1);
            return Permutation(std::move(img));
        };
        for (int th = 0; th < n; ++th) {
            if (order[th](k - 1) != k - 1) continue;  // theta must fix the last point
            Permutation thd = restrict_down(order[th]);
            for (int t = 0; t < n; ++t) {
                Rat expected(0);
                if (order[t](k - 1) == k - 1) {
                    Permutation td = restrict_down(order[t]);
                    expected = csub(sub.index_of(td), sub.index_of(thd));
                }
                if (ck(t, th) != expected) {
                    rep.block_recursion = false;
                    if (rep.recursion_applicable) fail("block recursion", t, th);
                }
            }
        }
    }

    if (!rep.recursion_applicable && !rep.block_recursion)
        rep.notes.push_back("block recursion outside its k <= dD domain (pseudo-inverse "
                            "Weingarten); identity does not apply and indeed fails");

    // basis-change similarity T_rho = Q_rho^T C_k Q_rho: <tau|T_rho|theta> = <rho tau|C_k|rho theta>
    rep.basis_change = true;
    for (int r = 0; r < n && rep.basis_change; ++r) {
        RationalMatrix tr = build_transfer(order[r], k, params).matrix;
        for (int t = 0; t < n && rep.basis_change; ++t) {
            int rt = order.compose_idx(r, t);
            for (int th = 0; th < n; ++th) {
                if (tr(t, th) != ck(rt, order.compose_idx(r, th))) {
                    rep.basis_change = false;
                    fail("basis change (rho=" + order[r].cycle_string() + ")", t, th);
                    break;
                }
            }
        }
    }
    return rep;
}

LeadingPair leading_eigenpair_exact(int k, const EnsembleParams& params) {
    const GroupOrder& order = group_order(k);
    int n = order.size();
    RationalMatrix ck = build_transfer(Permutation::identity(k), k, params).matrix;
    LeadingPair lp;
    lp.right.assign(static_cast<size_t>(n), Rat(0));
    lp.right[0] = 1;  // |F_k> = e-indicator; C_k |F> = |F> since column e is the e-indicator

    // left eigenvector: solve x^T (C - I) = 0 by eliminating (C - I)^T x = 0;
    // kernel is one-dimensional (lambda_1 is simple)
    RationalMatrix a = ck.transposed();
    for (int i = 0; i < n; ++i) a(i, i) -= 1;
    // reduce to row echelon, then back-substitute a kernel vector
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < n; ++j) std::swap(a(r, j), a(piv, j));
        Rat pv = a(r, col);
        for (int j = 0; j < n; ++j) a(r, j) /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == r || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (r != n - 1) throw std::runtime_error("lambda_1 eigenspace not one-dimensional");
    int free_col = -1;
    for (int col = 0, pi = 0; col < n; ++col) {
        if (pi < r && pivot_col[static_cast<size_t>(pi)] == col) { ++pi; continue; }
        free_col = col;
        break;
    }
    std::vector<Rat> x(static_cast<size_t>(n), Rat(0));
    x[static_cast<size_t>(free_col)] = 1;
    for (int i = 0; i < r; ++i)
        x[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = -a(i, free_col);
    // normalize <L|F> = <L|e-indicator> = 1
    Rat scale = x[0];
    if (scale == 0) throw std::runtime_error("left eigenvector orthogonal to |F>");
    for (auto& v : x) v /= scale;
    lp.left = std::move(x);
    return lp;
}

}  // namespace rtns
