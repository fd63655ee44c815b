#pragma once

#include "rtns/permutation.hpp"
#include "rtns/rational.hpp"

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <vector>

namespace rtns {

// G[sigma][tau] = q^{#(sigma tau^-1)} in the GroupOrder basis
RationalMatrix gram_matrix(int k, long q);

// Weingarten function for U(q) at k replicas. Values depend only on the
// conjugacy class. For k <= q this is the exact Gram inverse; for k > q the
// character-formula extension over partitions of length <= q (the
// pseudo-inverse of the then-singular Gram matrix).
class WeingartenTable {
  public:
    WeingartenTable(int k, long q);

    int k() const { return k_; }
    long q() const { return q_; }
    const GroupOrder& order() const { return *order_; }

    // Wg evaluated on group element index (class lookup)
    const Rat& value_idx(int g) const { return by_elem_[static_cast<size_t>(g)]; }
    const Rat& value(const Permutation& p) const { return by_elem_[static_cast<size_t>(order_->index_of(p))]; }
    // cycle type -> value
    const std::vector<std::pair<std::vector<int>, Rat>>& by_cycle_type() const { return by_type_; }

    // both computation paths, exposed for cross-validation
    static std::vector<Rat> via_gram_inverse(const GroupOrder& order, long q);
    static std::vector<Rat> via_characters(const GroupOrder& order, long q);

  private:
    int k_;
    long q_;
    std::shared_ptr<const GroupOrder> order_;
    std::vector<Rat> by_elem_;
    std::vector<std::pair<std::vector<int>, Rat>> by_type_;
};

// process-wide cache, keyed by (k, q); transfer builds hit this repeatedly
const WeingartenTable& weingarten_table(int k, long q);
const GroupOrder& group_order(int k);

// c[sigma][tau] = Wg(sigma tau^-1, q): coefficients of the k-fold twirl
// T_U(X) = sum c[sigma][tau] P_sigma tr(X P_tau^T)
RationalMatrix twirl_coefficients(int k, long q);

// dense representation of P_sigma on (C^q)^{otimes k}
RationalMatrix permutation_operator(const Permutation& sigma, long q);

// exact k-fold twirl of a rational matrix X on (C^q)^{otimes k}
RationalMatrix twirl_apply(const RationalMatrix& X, int k, long q);
// same for complex input (exact coefficients, floating entries)
Eigen::MatrixXcd twirl_apply(const Eigen::MatrixXcd& X, int k, long q);

}  // namespace rtns
