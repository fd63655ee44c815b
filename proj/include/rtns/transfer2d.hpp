#pragma once

#include "rtns/permutation.hpp"
#include "rtns/rational.hpp"
#include "rtns/transfer1d.hpp"

#include <memory>
#include <string>
#include <vector>

namespace rtns {

// Bulk transfer tensor of the 2D ensemble. Core entries
//   core[tau][theta][nu] = sum_sigma Wg(sigma tau^-1, dD^2)
//                          d^{#(sigma rho)} D^{#(sigma theta^-1)} D^{#(sigma nu^-1)}
// where tau is the tensor's own permutation leg (shared, via a Kronecker delta,
// between the left and down directions of the lattice wiring), theta points at
// the right neighbour and nu at the neighbour above.
class TransferTensor2D {
  public:
    TransferTensor2D(int k, const EnsembleParams& params, const Permutation& rho);

    int k() const { return k_; }
    int leg_dim() const { return n_; }
    const EnsembleParams& params() const { return params_; }
    const Permutation& rho() const { return rho_; }

    const Rat& core(int tau, int theta, int nu) const {
        return core_[(static_cast<size_t>(tau) * n_ + theta) * n_ + nu];
    }
    double core_d(int tau, int theta, int nu) const {
        return cored_[(static_cast<size_t>(tau) * n_ + theta) * n_ + nu];
    }
    // 4-leg view: left and down both carry the tensor's own leg
    Rat entry(int left, int right, int down, int up) const {
        return (left == down) ? core(left, right, up) : Rat(0);
    }

    // same tensor with the two bond slots exchanged (horizontal <-> vertical)
    TransferTensor2D with_swapped_bonds() const;

  private:
    TransferTensor2D() = default;
    int k_ = 0, n_ = 0;
    EnsembleParams params_;
    Permutation rho_;
    std::vector<Rat> core_;
    std::vector<double> cored_;
};

TransferTensor2D build_bulk(const Permutation& rho, int k, const EnsembleParams& params);

enum class BoundaryKind { Top, Right, Corner };

// Top:    [tau][theta] = sum Wg(sigma tau^-1, dD^2) (dD)^{#(sigma rho)} D^{#(sigma theta^-1)}
// Right:  [tau][nu]    = same with the vertical slot
// Corner: [tau]        = sum Wg(sigma tau^-1, dD^2) (dD^2)^{#(sigma rho)}  (= delta_e at rho = e)
struct BoundaryTensor2D {
    BoundaryKind kind;
    int k;
    EnsembleParams params;
    Permutation rho;
    RationalMatrix matrix;   // top/right
    std::vector<Rat> vec;    // corner
};

BoundaryTensor2D build_boundary(BoundaryKind kind, const Permutation& rho, int k,
                                const EnsembleParams& params);

// Height-h column transfer matrix:
//   T[{o},{i}] = prod_{j=1..h} core[o_j][i_j][o_{j+1}],  o_{h+1} = e,
// rows/columns indexed base-k! with digit 1 (least significant) nearest the
// orthogonality hypersurface. Dense rationals for k = 2 (h <= 8) and k = 4
// (h <= 2); k = 4, h = 3 keeps only the float matvec.
class CurlyTransfer {
  public:
    CurlyTransfer(const TransferTensor2D& bulk, int h);

    int k() const { return bulk_->k(); }
    int h() const { return h_; }
    long dim() const { return dim_; }
    bool has_dense() const { return has_dense_; }
    const RationalMatrix& matrix() const;
    const TransferTensor2D& bulk() const { return *bulk_; }

    std::vector<Rat> apply(const std::vector<Rat>& v) const;          // dense only
    std::vector<double> apply_float(const std::vector<double>& v) const;  // any size

  private:
    std::shared_ptr<const TransferTensor2D> bulk_;
    int h_;
    long dim_;
    bool has_dense_;
    RationalMatrix mat_;
};

CurlyTransfer assemble_curly(const Permutation& rho, int k, int h, const EnsembleParams& params);

struct CurlyBoundary {
    std::vector<Rat> initial;  // all ones, dim (k!)^h
    std::vector<Rat> final;    // indicator of the all-e column
};
CurlyBoundary curly_boundary_vectors(int k, int h);

struct Region2D {
    int c = 0, a = 1, r = 0, b = 1, h = 1;
    Region2D() = default;
    Region2D(int c_, int a_, int r_, int b_, int h_);
};

enum class Measure2D { Purity, Renyi2, HsNorm };

struct Avg2DResult {
    Measure2D measure;
    bool exact = false;
    Rat exact_value;            // purity / hsnorm when exact
    double value = 0;           // float value (for renyi2: the MI itself)
    Rat tr_ab2, tr_a2, tr_b2;   // renyi2 terms (k = 2, exact)
};

Avg2DResult avg_measures_2d(Measure2D measure, const Region2D& region, int k,
                            const EnsembleParams& params);

struct Lemma2DReport {
    int k = 0, h = 0;
    EnsembleParams params;
    bool triangular = false;        // zero blocks exact
    bool first_block_matches = false;  // first diagonal block == 1D T_e(d -> dD)
    bool substochastic = false;     // k=2 exact column sums; k=4 exact column bound < beta
    bool lambda1_ok = false;
    bool lambda2_ok = false;
    int mult2_observed = 0;
    bool mult2_ok = false;
    // k = 4 class prefactor checks on the first-block matrix N
    bool class3_bound_ok = false;   // max |p| < beta/2 over single-fixed-point pairs
    bool class4_bound_ok = false;   // max |p| < beta/9 over no-fixed-point pairs
    Rat class3_worst, class4_worst;
    Rat class4_column_bound;        // exact spectral-radius bound for the class-4 block; < beta
    bool class4_spectral_ok = false;
    std::vector<std::string> notes;

    bool core_pass() const {
        return triangular && first_block_matches && substochastic && lambda1_ok && lambda2_ok &&
               mult2_ok;
    }
};

Lemma2DReport lemma_checks(int k, int h, const EnsembleParams& params);

}  // namespace rtns
