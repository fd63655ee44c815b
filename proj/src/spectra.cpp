#include "rtns/spectra.hpp"

#include "rtns/weingarten.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtns {

namespace {

// dgeev with balancing via LAPACKE; unpacks conjugate pairs to complex columns
void dgeev_full(const Eigen::MatrixXd& a, Eigen::VectorXcd& vals, Eigen::MatrixXcd& right,
                Eigen::MatrixXcd& left) {
    int n = static_cast<int>(a.rows());
    std::vector<double> m(a.data(), a.data() + n * n);  // column-major copy via Eigen default
    std::vector<double> wr(static_cast<size_t>(n)), wi(static_cast<size_t>(n));
    std::vector<double> vl(static_cast<size_t>(n) * static_cast<size_t>(n));
    std::vector<double> vr(static_cast<size_t>(n) * static_cast<size_t>(n));
    int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'V', 'V', n, m.data(), n, wr.data(), wi.data(),
                             vl.data(), n, vr.data(), n);
    if (info != 0) {
        std::ostringstream os;
        os << "dgeev failed to converge (info=" << info << ", n=" << n
           << ", ||A||=" << a.norm() << ")";
        throw std::runtime_error(os.str());
    }
    vals.resize(n);
    right.resize(n, n);
    left.resize(n, n);
    for (int j = 0; j < n; ++j) {
        vals(j) = {wr[static_cast<size_t>(j)], wi[static_cast<size_t>(j)]};
        if (wi[static_cast<size_t>(j)] > 0.0) {
            for (int i = 0; i < n; ++i) {
                double re_r = vr[static_cast<size_t>(j) * n + i];
                double im_r = vr[(static_cast<size_t>(j) + 1) * n + i];
                right(i, j) = {re_r, im_r};
                right(i, j + 1) = {re_r, -im_r};
                double re_l = vl[static_cast<size_t>(j) * n + i];
                double im_l = vl[(static_cast<size_t>(j) + 1) * n + i];
                left(i, j) = {re_l, im_l};
                left(i, j + 1) = {re_l, -im_l};
            }
        } else if (wi[static_cast<size_t>(j)] == 0.0) {
            for (int i = 0; i < n; ++i) {
                right(i, j) = vr[static_cast<size_t>(j) * n + i];
                left(i, j) = vl[static_cast<size_t>(j) * n + i];
            }
        }
    }
}

}  // namespace

SpectrumReport eigen_full(const Eigen::MatrixXd& a, double tol, bool refine_degenerate) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix not square");
    if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    int n = static_cast<int>(a.rows());

    Eigen::VectorXcd vals;
    Eigen::MatrixXcd vr, vlm;
    dgeev_full(a, vals, vr, vlm);

    double smax = 0;
    for (int i = 0; i < n; ++i) smax = std::max(smax, std::abs(vals(i)));
    double eps = tol * std::max(smax, 1e-300);

    // group eigenvalues within eps (complex distance), largest modulus first
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int x, int y) { return std::abs(vals(x)) > std::abs(vals(y)); });
    std::vector<std::vector<int>> groups_idx;
    for (int i : idx) {
        bool placed = false;
        for (auto& g : groups_idx)
            if (std::abs(vals(g.front()) - vals(i)) <= eps) {
                g.push_back(i);
                placed = true;
                break;
            }
        if (!placed) groups_idx.push_back({i});
    }

    SpectrumReport rep;
    rep.dimension = n;
    rep.grouping_tol = tol;

    // residual of the raw eigenpairs: ||A V - V Lambda|| / ||A|| with each
    // column paired to its own eigenvalue
    {
        Eigen::MatrixXcd lam_v = vr;
        for (int j = 0; j < n; ++j) lam_v.col(j) *= vals(j);
        double anorm = a.norm();
        rep.residual = (a.cast<std::complex<double>>() * vr - lam_v).norm() /
                       std::max(anorm, 1e-300);
    }

    double biortho_err = 0;
    for (auto& g : groups_idx) {
        EigenGroup eg;
        std::complex<double> mean = 0;
        for (int i : g) mean += vals(i);
        eg.value = mean / static_cast<double>(g.size());
        eg.multiplicity = static_cast<int>(g.size());
        eg.right.resize(n, eg.multiplicity);
        eg.left.resize(n, eg.multiplicity);
        for (size_t c = 0; c < g.size(); ++c) {
            eg.right.col(static_cast<int>(c)) = vr.col(g[c]);
            eg.left.col(static_cast<int>(c)) = vlm.col(g[c]);
        }
        // biorthonormalize within the group: set L <- L (M^-1)^H, M = L^H R
        auto try_pair = [&](EigenGroup& grp) {
            Eigen::MatrixXcd m = grp.left.adjoint() * grp.right;
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
            lu.setThreshold(1e-10);
            if (!lu.isInvertible()) return false;
            grp.left = grp.left * lu.inverse().adjoint();
            return true;
        };
        if (!try_pair(eg) && eg.multiplicity > 1 && refine_degenerate) {
            // raw dgeev columns inside a degenerate cluster can be nearly
            // dependent; rebuild bases from SVD nullspaces of A - lambda I
            Eigen::MatrixXcd shifted = a.cast<std::complex<double>>();
            shifted.diagonal().array() -= eg.value;
            Eigen::BDCSVD<Eigen::MatrixXcd> svr(shifted, Eigen::ComputeThinV);
            Eigen::BDCSVD<Eigen::MatrixXcd> svl(shifted.adjoint(), Eigen::ComputeThinV);
            for (int c = 0; c < eg.multiplicity; ++c) {
                eg.right.col(c) = svr.matrixV().col(n - 1 - c);
                eg.left.col(c) = svl.matrixV().col(n - 1 - c);
            }
            try_pair(eg);
        }
        rep.groups.push_back(std::move(eg));
    }
    // cross-group biorthogonality check (should hold automatically for distinct eigenvalues)
    for (size_t gi = 0; gi < rep.groups.size(); ++gi)
        for (size_t gj = 0; gj < rep.groups.size(); ++gj) {
            Eigen::MatrixXcd m = rep.groups[gi].left.adjoint() * rep.groups[gj].right;
            if (gi == gj)
                m -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
            biortho_err = std::max(biortho_err, m.cwiseAbs().maxCoeff());
        }
    rep.biortho_error = biortho_err;
    return rep;
}

CorrelationLength xi_closed_form(Dimension dim, const EnsembleParams& params) {
    long d = params.d, D = params.D;
    CorrelationLength cl;
    cl.dim = dim;
    if (dim == Dimension::One)
        cl.lambda2 = rat(d * D * D - d, d * d * D * D - 1);
    else
        cl.lambda2 = rat(d * D * D * D - d * D, d * d * D * D * D * D - 1);
    cl.xi = -1.0 / std::log(to_double(cl.lambda2));
    cl.zeta = Rat(d) * cl.lambda2;
    return cl;
}

ConjectureReport conjecture_check(int k, const EnsembleParams& params, bool allow_stretch) {
    if (k < 2 || k > (allow_stretch ? 7 : 6))
        throw std::invalid_argument("conjecture check supports 2 <= k <= 6 (7 with stretch flag)");
    ConjectureReport rep;
    rep.k = k;
    rep.params = params;
    long d = params.d, D = params.D;
    rep.mu2 = rat(d * D * D - d, d * d * D * D - 1);
    int v2 = k * (k - 1) / 2;

    RationalMatrix ck = build_transfer(Permutation::identity(k), k, params).matrix;
    SpectrumReport spec = eigen_full(ck.to_double());

    const auto& l1 = spec.leading();
    rep.lambda1_is_one = std::abs(l1.value - 1.0) <= 1e-8;
    rep.lambda1_simple = l1.multiplicity == 1;
    if (!rep.lambda1_is_one || !rep.lambda1_simple) {
        std::ostringstream os;
        os << "lambda_1 = " << l1.value << " multiplicity " << l1.multiplicity;
        rep.failures.push_back(os.str());
    }
    const auto& l2 = spec.subleading();
    rep.lambda2_observed = l2.value;
    rep.mult2_observed = l2.multiplicity;
    double mu2d = to_double(rep.mu2);
    rep.lambda2_matches = std::abs(l2.value - mu2d) <= 1e-8 * std::max(1.0, std::abs(mu2d));
    rep.mult2_matches = l2.multiplicity == v2;
    if (!rep.lambda2_matches || !rep.mult2_matches) {
        std::ostringstream os;
        os << "lambda_2 = " << l2.value << " (expected " << mu2d << ") multiplicity "
           << l2.multiplicity << " (expected " << v2 << ")";
        rep.failures.push_back(os.str());
    }

    // exact confirmation that mu2 is an eigenvalue. For k <= dD the columns of
    // transpositions have the two-entry form, so v = alpha/(beta-1)|e> + |t> is
    // an exact eigenvector for every transposition t (multiplicity >= C(k,2)).
    // For k > dD (pseudo-inverse Weingarten regime) that structure is lost;
    // certify by the exact nullity of C_k - mu2 I over the rationals instead.
    const GroupOrder& order = group_order(k);
    int n = order.size();
    if (k <= static_cast<int>(d * D)) {
        Rat alpha = rat(d * d * D - D, d * d * D * D - 1);
        Rat coeff = alpha / (rep.mu2 - 1);
        rep.exact_mu2_eigenvalue = true;
        for (int t : order.transposition_indices()) {
            // v = coeff |e> + |t> is sparse: C_k v = coeff * col_e + col_t
            for (int i = 0; i < n; ++i) {
                Rat lhs = coeff * ck(i, 0) + ck(i, t);
                Rat rhs = (i == 0) ? rep.mu2 * coeff : ((i == t) ? rep.mu2 : Rat(0));
                if (lhs != rhs) {
                    rep.exact_mu2_eigenvalue = false;
                    rep.failures.push_back("exact mu2 eigenvector failed for t = " +
                                           order[t].cycle_string());
                    break;
                }
            }
            if (!rep.exact_mu2_eigenvalue) break;
        }
    } else {
        RationalMatrix shifted = ck;
        for (int i = 0; i < n; ++i) shifted(i, i) -= rep.mu2;
        rep.exact_nullity = n - shifted.rank();
        rep.exact_mu2_eigenvalue = rep.exact_nullity >= 1;
        if (rep.exact_nullity != v2) {
            std::ostringstream os;
            os << "exact nullity of C_k - mu2 I is " << rep.exact_nullity << " (expected " << v2
               << ")";
            rep.failures.push_back(os.str());
            rep.mult2_matches = rep.mult2_matches && rep.exact_nullity == v2;
        }
    }
    return rep;
}

DecayFit decay_extrapolate(const std::vector<std::pair<double, double>>& values) {
    if (values.size() < 3) throw std::invalid_argument("need at least 3 points");
    for (const auto& [r, v] : values)
        if (!(v > 0)) throw std::invalid_argument("decay fit requires positive values");
    int n = static_cast<int>(values.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [r, v] : values) {
        double y = std::log(v);
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("degenerate r grid");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    DecayFit fit;
    fit.points = n;
    fit.rate = -slope;
    fit.xi = (slope == 0) ? std::numeric_limits<double>::infinity() : -1.0 / slope;
    fit.intercept = intercept;
    fit.prefactor = std::exp(intercept);
    double ss = 0;
    for (const auto& [r, v] : values) {
        double e = std::log(v) - (intercept + slope * r);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    fit.slope_stderr = (n > 2) ? std::sqrt(ss / (n - 2) / (sxx - sx * sx / n)) : 0.0;
    return fit;
}

}  // namespace rtns
