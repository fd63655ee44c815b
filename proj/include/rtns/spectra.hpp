#pragma once

#include "rtns/rational.hpp"
#include "rtns/transfer1d.hpp"

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace rtns {

// eigenvalues grouped into distinct values, sorted by modulus descending
struct EigenGroup {
    std::complex<double> value;
    int multiplicity;
    Eigen::MatrixXcd right;  // n x multiplicity
    Eigen::MatrixXcd left;   // n x multiplicity, <L_i|R_j> = delta
};

struct SpectrumReport {
    std::vector<EigenGroup> groups;
    double grouping_tol;       // relative tolerance used to merge eigenvalues
    double residual;           // ||A V - V Lambda||_F / ||A||_F
    double biortho_error;      // max |<L_i|R_j> - delta_ij|
    int dimension;

    const EigenGroup& leading() const { return groups.front(); }
    const EigenGroup& subleading() const { return groups.at(1); }
};

// refine_degenerate recomputes eigenbases of degenerate groups from SVD
// nullspaces before biorthonormalizing (more robust, O(n^3) per group)
SpectrumReport eigen_full(const Eigen::MatrixXd& a, double tol = 1e-8,
                          bool refine_degenerate = true);

enum class Dimension { One, Two };

struct CorrelationLength {
    Dimension dim;
    Rat lambda2;  // exact subleading eigenvalue
    double xi;    // -1/log(lambda2)
    Rat zeta;     // d * lambda2
};

CorrelationLength xi_closed_form(Dimension dim, const EnsembleParams& params);

struct ConjectureReport {
    int k;
    EnsembleParams params;
    bool lambda1_is_one = false;
    bool lambda1_simple = false;
    bool lambda2_matches = false;   // float, 1e-8
    bool mult2_matches = false;     // multiplicity = k(k-1)/2
    bool exact_mu2_eigenvalue = false;  // exact certificate that mu2 is an eigenvalue
    int exact_nullity = -1;         // exact geometric multiplicity when computed (-1 if skipped)
    Rat mu2;
    std::complex<double> lambda2_observed;
    int mult2_observed = 0;
    std::vector<std::string> failures;
    bool pass() const {
        return lambda1_is_one && lambda1_simple && lambda2_matches && mult2_matches &&
               exact_mu2_eigenvalue;
    }
};

// Conjecture: lambda_2(C_k) = (dD^2-d)/(d^2D^2-1) with multiplicity C(k,2).
// k = 7 is allowed only with allow_stretch (5040 x 5040 dense solve).
ConjectureReport conjecture_check(int k, const EnsembleParams& params, bool allow_stretch = false);

struct DecayFit {
    double xi;         // -1/slope of ln(value) vs r
    double rate;       // 1/xi
    double intercept;  // ln K
    double prefactor;  // K
    double residual_rms;
    double slope_stderr;
    int points;
};

// least-squares fit of ln(value) against r; throws on non-positive values
DecayFit decay_extrapolate(const std::vector<std::pair<double, double>>& values);

}  // namespace rtns
