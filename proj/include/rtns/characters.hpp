#pragma once

#include "rtns/rational.hpp"

#include <vector>

namespace rtns {

using Partition = std::vector<int>;  // parts descending, sum = k

// all partitions of k, descending-lex order
std::vector<Partition> partitions_of(int k);

// number of standard Young tableaux of shape lambda (hook length formula)
mpz_class tableaux_count(const Partition& lambda);

// irreducible character chi^lambda evaluated on class of cycle type mu
// (Murnaghan-Nakayama rule)
mpz_class character(const Partition& lambda, const Partition& mu);

// Schur polynomial at q ones: s_lambda(1^q) = prod_{(i,j)} (q + j - i)/hook(i,j);
// zero when length(lambda) > q
Rat schur_at_ones(const Partition& lambda, long q);

}  // namespace rtns
