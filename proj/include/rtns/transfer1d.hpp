#pragma once

#include "rtns/permutation.hpp"
#include "rtns/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtns {

struct EnsembleParams {
    int d = 2;  // physical dimension
    int D = 2;  // bond dimension
    EnsembleParams() = default;
    EnsembleParams(int d_, int D_);
};

// Sites around and between the measured subsystems:
// c before A, a in A, r between A and B, b in B, f after B (f >= 1).
struct RegionSpec {
    int c = 0, a = 1, r = 0, b = 1, f = 1;
    RegionSpec() = default;
    RegionSpec(int c_, int a_, int r_, int b_, int f_);
};

// T_rho in R^{k! x k!}, basis = GroupOrder:
// <tau|T_rho|theta> = sum_sigma Wg(sigma tau^-1, dD) d^{#(sigma rho)} D^{#(sigma theta^-1)}
struct TransferMatrix1D {
    int k;
    EnsembleParams params;
    Permutation rho;
    RationalMatrix matrix;
};

struct BoundaryVectors {
    std::vector<Rat> initial;  // all ones
    std::vector<Rat> final;    // indicator of e
};

TransferMatrix1D build_transfer(const Permutation& rho, int k, const EnsembleParams& params);
BoundaryVectors boundary_vectors(int k);

class GroupOrder;
class WeingartenTable;
// generic weighted transfer entry table, shared by the 1D and 2D builders:
// M[tau][theta] = sum_sigma Wg(sigma tau^-1) dphys^{#(sigma rho)} dbond^{#(sigma theta^-1)}
RationalMatrix transfer_matrix_weighted(const GroupOrder& order, const WeingartenTable& wg,
                                        int rho_idx, long dphys, long dbond);

// <I_k| prod_i T_{rho_i}^{p_i} |F_k>, exact
using TransferWord = std::vector<std::pair<Permutation, int>>;
Rat contract(const TransferWord& word, int k, const EnsembleParams& params);

// the three purity contractions entering the Renyi-2 mutual information
struct Renyi2Terms {
    Rat tr_ab2;  // E tr rho_AB^2
    Rat tr_a2;   // E tr rho_A^2
    Rat tr_b2;   // E tr rho_B^2
    double mi;   // log tr_ab2 - log tr_a2 - log tr_b2
};
Renyi2Terms avg_renyi2_mi(const RegionSpec& region, const EnsembleParams& params);

// E N(A:B) = <I_4| T_e^c T_(12)^a T_e^r (T_(12)^b + T_(34)^b - 2 T_(13)^b) |F_4>
Rat avg_hs_norm(const RegionSpec& region, const EnsembleParams& params);

// E tr(rho_R^alpha) with the alpha-cycle on the region sites; R = A, or A u B
// (jointly permuted) when joint_ab is set
Rat avg_renyi_alpha_trace(int alpha, const RegionSpec& region, const EnsembleParams& params,
                          bool joint_ab = false);

struct StructuralReport {
    bool conjugacy_covariance = false;  // <tau|C_k|theta> = <pi tau pi^-1|C_k|pi theta pi^-1>
    bool block_recursion = false;       // delta_{k,tau(k)} <tau_down|C_{k-1}|theta_down>
    bool basis_change = false;          // T_rho = Q_rho^T C_k Q_rho
    // the recursion rests on the Gram-inverse Weingarten function and is only a
    // theorem for k <= dD; outside that range it is evaluated and reported but
    // does not count against all()
    bool recursion_applicable = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool all() const {
        return conjugacy_covariance && basis_change &&
               (recursion_applicable ? block_recursion : true);
    }
};
StructuralReport structural_checks(int k, const EnsembleParams& params);

// exact left/right eigenvectors of C_k for the simple eigenvalue lambda_1 = 1;
// normalized so <L1|R1> = 1, R1 = |F_k>
struct LeadingPair {
    std::vector<Rat> left;
    std::vector<Rat> right;
};
LeadingPair leading_eigenpair_exact(int k, const EnsembleParams& params);

}  // namespace rtns
