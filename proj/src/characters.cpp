#include "rtns/characters.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rtns {

std::vector<Partition> partitions_of(int k) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, k, k);
    return out;
}

static std::vector<std::vector<int>> hooks(const Partition& lambda) {
    int rows = static_cast<int>(lambda.size());
    std::vector<int> collen;
    if (rows > 0) {
        collen.resize(static_cast<size_t>(lambda[0]), 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < lambda[static_cast<size_t>(i)]; ++j)
                ++collen[static_cast<size_t>(j)];
    }
    std::vector<std::vector<int>> h(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        h[static_cast<size_t>(i)].resize(static_cast<size_t>(lambda[static_cast<size_t>(i)]));
        for (int j = 0; j < lambda[static_cast<size_t>(i)]; ++j)
            h[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                (lambda[static_cast<size_t>(i)] - j) + (collen[static_cast<size_t>(j)] - i) - 1;
    }
    return h;
}

mpz_class tableaux_count(const Partition& lambda) {
    int k = 0;
    for (int p : lambda) k += p;
    mpz_class num = 1;
    for (int i = 2; i <= k; ++i) num *= i;
    mpz_class den = 1;
    for (const auto& row : hooks(lambda))
        for (int h : row) den *= h;
    if (num % den != 0) throw std::logic_error("hook length formula not integral");
    return num / den;
}

// Murnaghan-Nakayama via beta-numbers: removing a border strip of length L
// from lambda corresponds to replacing a beta-number b by b-L (if b-L >= 0 and
// not already a beta-number); the strip height is the number of beta-numbers
// strictly between b-L and b.
static mpz_class mn(const Partition& lambda, const Partition& mu,
                    std::map<std::pair<Partition, Partition>, mpz_class>& memo) {
    if (lambda.empty()) return 1;
    auto key = std::make_pair(lambda, mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (mu.empty()) throw std::logic_error("size mismatch in MN recursion");

    int L = mu[0];
    Partition rest(mu.begin() + 1, mu.end());
    int n = static_cast<int>(lambda.size());
    std::vector<int> beta(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) beta[static_cast<size_t>(i)] = lambda[static_cast<size_t>(i)] + (n - 1 - i);

    mpz_class total = 0;
    for (int i = 0; i < n; ++i) {
        int b = beta[static_cast<size_t>(i)];
        int t = b - L;
        if (t < 0) continue;
        bool clash = false;
        int height = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (beta[static_cast<size_t>(j)] == t) { clash = true; break; }
            if (beta[static_cast<size_t>(j)] > t && beta[static_cast<size_t>(j)] < b) ++height;
        }
        if (clash) continue;
        std::vector<int> nb = beta;
        nb[static_cast<size_t>(i)] = t;
        std::sort(nb.rbegin(), nb.rend());
        Partition nl;
        for (int j = 0; j < n; ++j) {
            int part = nb[static_cast<size_t>(j)] - (n - 1 - j);
            if (part > 0) nl.push_back(part);
        }
        mpz_class sub = mn(nl, rest, memo);
        total += (height % 2) ? -sub : sub;
    }
    memo[key] = total;
    return total;
}

mpz_class character(const Partition& lambda, const Partition& mu) {
    int kl = 0, km = 0;
    for (int p : lambda) kl += p;
    for (int p : mu) km += p;
    if (kl != km) throw std::invalid_argument("partition sizes differ");
    static thread_local std::map<std::pair<Partition, Partition>, mpz_class> memo;
    return mn(lambda, mu, memo);
}

Rat schur_at_ones(const Partition& lambda, long q) {
    if (static_cast<long>(lambda.size()) > q) return Rat(0);
    Rat prod(1);
    auto h = hooks(lambda);
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = 0; j < h[i].size(); ++j) {
            long content = static_cast<long>(j) - static_cast<long>(i);
            prod *= rat(q + content, h[i][j]);
        }
    return prod;
}

}  // namespace rtns
