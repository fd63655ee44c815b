#include "rtns/weingarten.hpp"

#include "rtns/characters.hpp"

#include <mutex>
#include <stdexcept>

namespace rtns {

RationalMatrix gram_matrix(int k, long q) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (q < 1) throw std::invalid_argument("q must be positive");
    const GroupOrder& order = group_order(k);
    int n = order.size();
    RationalMatrix g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = order.cycles_idx(order.compose_idx(a, order.inverse_idx(b)));
            Rat v(1);
            for (int i = 0; i < c; ++i) v *= q;
            g(a, b) = v;
        }
    return g;
}

std::vector<Rat> WeingartenTable::via_gram_inverse(const GroupOrder& order, long q) {
    int k = order.k();
    RationalMatrix w = gram_matrix(k, q).inverse();
    // Wg(p, q) = (G^-1)_{sigma tau} for any sigma tau^-1 = p; take tau = e
    int e = order.index_of(Permutation::identity(k));
    std::vector<Rat> out(static_cast<size_t>(order.size()));
    for (int g = 0; g < order.size(); ++g) out[static_cast<size_t>(g)] = w(g, e);
    return out;
}

std::vector<Rat> WeingartenTable::via_characters(const GroupOrder& order, long q) {
    int k = order.k();
    mpz_class kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    Rat norm = rat(1) / Rat(kfact * kfact);

    auto parts = partitions_of(k);
    // per conjugacy class: Wg(mu) = 1/k!^2 sum_{len(lambda)<=q} f_lambda^2 chi^lambda(mu) / s_lambda(1^q)
    std::vector<Rat> per_class(static_cast<size_t>(order.num_classes()), Rat(0));
    for (const auto& lambda : parts) {
        if (static_cast<long>(lambda.size()) > q) continue;
        mpz_class f = tableaux_count(lambda);
        Rat s = schur_at_ones(lambda, q);
        if (s == 0) throw std::logic_error("schur_at_ones vanished for admissible shape");
        Rat weight = Rat(f * f) / s;
        for (int c = 0; c < order.num_classes(); ++c) {
            Partition mu(order.class_type(c).begin(), order.class_type(c).end());
            per_class[static_cast<size_t>(c)] += weight * Rat(character(lambda, mu));
        }
    }
    std::vector<Rat> out(static_cast<size_t>(order.size()));
    for (int g = 0; g < order.size(); ++g)
        out[static_cast<size_t>(g)] = norm * per_class[static_cast<size_t>(order.class_of(g))];
    return out;
}

WeingartenTable::WeingartenTable(int k, long q) : k_(k), q_(q) {
    if (k < 1 || k > kMaxDegree) throw std::invalid_argument("k out of range");
    if (q < 1) throw std::invalid_argument("q must be positive");
    order_ = std::make_shared<GroupOrder>(k);
    by_elem_ = (k <= q) ? via_gram_inverse(*order_, q) : via_characters(*order_, q);
    for (int c = 0; c < order_->num_classes(); ++c)
        by_type_.emplace_back(order_->class_type(c),
                              by_elem_[static_cast<size_t>(order_->class_rep(c))]);
}

namespace {
std::mutex cache_mutex;
std::map<std::pair<int, long>, std::unique_ptr<WeingartenTable>> wg_cache;
std::map<int, std::unique_ptr<GroupOrder>> order_cache;
}  // namespace

const WeingartenTable& weingarten_table(int k, long q) {
    auto key = std::make_pair(k, q);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = wg_cache.find(key);
        if (it != wg_cache.end()) return *it->second;
    }
    // construct outside the lock; the constructor itself calls group_order()
    auto fresh = std::make_unique<WeingartenTable>(k, q);
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = wg_cache.find(key);
    if (it == wg_cache.end()) it = wg_cache.emplace(key, std::move(fresh)).first;
    return *it->second;
}

const GroupOrder& group_order(int k) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = order_cache.find(k);
        if (it != order_cache.end()) return *it->second;
    }
    auto fresh = std::make_unique<GroupOrder>(k);
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = order_cache.find(k);
    if (it == order_cache.end()) it = order_cache.emplace(k, std::move(fresh)).first;
    return *it->second;
}

RationalMatrix twirl_coefficients(int k, long q) {
    const WeingartenTable& wg = weingarten_table(k, q);
    const GroupOrder& order = wg.order();
    int n = order.size();
    RationalMatrix c(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            c(a, b) = wg.value_idx(order.compose_idx(a, order.inverse_idx(b)));
    return c;
}

RationalMatrix permutation_operator(const Permutation& sigma, long q) {
    int k = sigma.degree();
    long dim = 1;
    for (int i = 0; i < k; ++i) {
        dim *= q;
        if (dim > (1L << 24)) throw std::invalid_argument("permutation operator too large");
    }
    RationalMatrix p(static_cast<int>(dim), static_cast<int>(dim));
    std::vector<long> digits(static_cast<size_t>(k));
    for (long col = 0; col < dim; ++col) {
        long x = col;
        for (int i = k - 1; i >= 0; --i) {
            digits[static_cast<size_t>(i)] = x % q;
            x /= q;
        }
        // P_sigma |v_1 ... v_k> = |v_{sigma^-1(1)} ... v_{sigma^-1(k)}>,
        // i.e. output slot i holds input digit sigma^{-1}(i): out[sigma(i)] = in[i]
        long row = 0;
        std::vector<long> od(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) od[static_cast<size_t>(sigma(i))] = digits[static_cast<size_t>(i)];
        for (int i = 0; i < k; ++i) row = row * q + od[static_cast<size_t>(i)];
        p(static_cast<int>(row), static_cast<int>(col)) = 1;
    }
    return p;
}

RationalMatrix twirl_apply(const RationalMatrix& X, int k, long q) {
    const WeingartenTable& wg = weingarten_table(k, q);
    const GroupOrder& order = wg.order();
    long dim = 1;
    for (int i = 0; i < k; ++i) dim *= q;
    if (X.rows() != dim || X.cols() != dim) throw std::invalid_argument("operand shape");
    RationalMatrix out(static_cast<int>(dim), static_cast<int>(dim));
    for (int b = 0; b < order.size(); ++b) {
        RationalMatrix pt = permutation_operator(order[b], q).transposed();
        Rat tr(0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (pt(j, i) != 0) tr += X(i, j) * pt(j, i);
        if (tr == 0) continue;
        for (int a = 0; a < order.size(); ++a) {
            Rat coeff = wg.value_idx(order.compose_idx(a, order.inverse_idx(b))) * tr;
            if (coeff == 0) continue;
            RationalMatrix ps = permutation_operator(order[a], q);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    if (ps(i, j) != 0) out(i, j) += coeff * ps(i, j);
        }
    }
    return out;
}

Eigen::MatrixXcd twirl_apply(const Eigen::MatrixXcd& X, int k, long q) {
    const WeingartenTable& wg = weingarten_table(k, q);
    const GroupOrder& order = wg.order();
    long dim = 1;
    for (int i = 0; i < k; ++i) dim *= q;
    if (X.rows() != dim || X.cols() != dim) throw std::invalid_argument("operand shape");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < order.size(); ++b) {
        Eigen::MatrixXd pb = permutation_operator(order[b], q).to_double();
        std::complex<double> tr = (X * pb.transpose()).trace();
        for (int a = 0; a < order.size(); ++a) {
            double coeff = wg.value_idx(order.compose_idx(a, order.inverse_idx(b))).get_d();
            out += coeff * tr * permutation_operator(order[a], q).to_double();
        }
    }
    return out;
}

}  // namespace rtns
