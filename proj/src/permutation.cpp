#include "rtns/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtns {

Permutation::Permutation(std::vector<uint8_t> imgs) : images(std::move(imgs)) {
    std::vector<bool> seen(images.size(), false);
    for (uint8_t v : images) {
        if (v >= images.size() || seen[v]) throw std::invalid_argument("not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int k) {
    Permutation p;
    p.images.resize(static_cast<size_t>(k));
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
}

Permutation Permutation::from_cycles(const std::string& s, int k) {
    Permutation p = identity(k);
    const std::string& t = s;
    size_t i = 0;
    auto skip_ws = [&] { while (i < t.size() && isspace(static_cast<unsigned char>(t[i]))) ++i; };
    skip_ws();
    if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) return p;
    while (i < t.size()) {
        skip_ws();
        if (i >= t.size()) break;
        if (t[i] != '(') throw std::invalid_argument("bad cycle string: " + s);
        ++i;
        std::vector<int> cyc;
        while (true) {
            skip_ws();
            if (i >= t.size()) throw std::invalid_argument("unterminated cycle: " + s);
            if (t[i] == ')') { ++i; break; }
            if (t[i] == ',') { ++i; continue; }
            size_t j = i;
            while (j < t.size() && isdigit(static_cast<unsigned char>(t[j]))) ++j;
            if (j == i) throw std::invalid_argument("bad cycle string: " + s);
            int v = std::stoi(t.substr(i, j - i));
            if (v < 1 || v > k) throw std::invalid_argument("cycle entry out of range: " + s);
            cyc.push_back(v - 1);
            i = j;
        }
        for (size_t a = 0; a < cyc.size(); ++a)
            p.images[static_cast<size_t>(cyc[a])] =
                static_cast<uint8_t>(cyc[(a + 1) % cyc.size()]);
    }
    Permutation check(p.images);  // validates bijection (repeated entries across cycles)
    return check;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] != i) return false;
    return true;
}

int Permutation::fixed_points() const {
    int n = 0;
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] == i) ++n;
    return n;
}

std::string Permutation::cycle_string() const {
    if (is_identity()) return "e";
    std::ostringstream os;
    std::vector<bool> seen(images.size(), false);
    for (size_t i = 0; i < images.size(); ++i) {
        if (seen[i] || images[i] == i) continue;
        os << '(';
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) os << ' ';
            os << (j + 1);
            first = false;
            j = images[j];
        }
        os << ')';
    }
    return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch");
    Permutation r;
    r.images.resize(p.images.size());
    for (size_t i = 0; i < p.images.size(); ++i) r.images[i] = p.images[q.images[i]];
    return r;
}

Permutation inverse(const Permutation& p) {
    Permutation r;
    r.images.resize(p.images.size());
    for (size_t i = 0; i < p.images.size(); ++i) r.images[p.images[i]] = static_cast<uint8_t>(i);
    return r;
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
    return compose(g, compose(p, inverse(g)));
}

int cycle_count(const Permutation& p) {
    int n = p.degree(), c = 0;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        ++c;
        int j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            j = p(j);
        }
    }
    return c;
}

std::vector<int> cycle_type(const Permutation& p) {
    int n = p.degree();
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> t;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            j = p(j);
            ++len;
        }
        t.push_back(len);
    }
    std::sort(t.rbegin(), t.rend());
    return t;
}

uint64_t GroupOrder::pack(const std::vector<uint8_t>& v) {
    uint64_t x = 0;
    for (uint8_t b : v) x = (x << 3) | b;
    return x;
}

GroupOrder::GroupOrder(int k) : k_(k) {
    if (k < 1 || k > kMaxDegree) throw std::invalid_argument("degree out of range [1,8]");
    std::vector<uint8_t> imgs(static_cast<size_t>(k));
    std::iota(imgs.begin(), imgs.end(), 0);
    do {
        Permutation p;
        p.images = imgs;
        elems_.push_back(std::move(p));
    } while (std::next_permutation(imgs.begin(), imgs.end()));

    auto sort_key = [k](const Permutation& p) {
        std::vector<uint8_t> moved;
        for (int i = 0; i < k; ++i)
            if (p(i) != i) moved.push_back(static_cast<uint8_t>(i));
        auto ct = cycle_type(p);
        std::vector<int> neg_ct(ct.size());
        for (size_t i = 0; i < ct.size(); ++i) neg_ct[i] = -ct[i];
        return std::make_tuple(static_cast<int>(moved.size()), moved, neg_ct, p.images);
    };
    std::stable_sort(elems_.begin(), elems_.end(),
                     [&](const Permutation& a, const Permutation& b) {
                         return sort_key(a) < sort_key(b);
                     });

    int n = size();
    lookup_.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) lookup_.emplace_back(pack(elems_[static_cast<size_t>(i)].images), i);
    std::sort(lookup_.begin(), lookup_.end());

    inv_.resize(static_cast<size_t>(n));
    cyc_.resize(static_cast<size_t>(n));
    fix_.resize(static_cast<size_t>(n));
    cls_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& p = elems_[static_cast<size_t>(i)];
        inv_[static_cast<size_t>(i)] = index_of(inverse(p));
        cyc_[static_cast<size_t>(i)] = cycle_count(p);
        fix_[static_cast<size_t>(i)] = p.fixed_points();
        auto ct = cycle_type(p);
        int c = -1;
        for (size_t j = 0; j < class_types_.size(); ++j)
            if (class_types_[j] == ct) { c = static_cast<int>(j); break; }
        if (c < 0) {
            c = static_cast<int>(class_types_.size());
            class_types_.push_back(ct);
            class_reps_.push_back(i);
        }
        cls_[static_cast<size_t>(i)] = c;
    }

    if (k <= 7) {
        compose_table_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                compose_table_[static_cast<size_t>(a) * static_cast<size_t>(n) +
                               static_cast<size_t>(b)] =
                    static_cast<uint16_t>(index_of(
                        compose(elems_[static_cast<size_t>(a)], elems_[static_cast<size_t>(b)])));
    }
}

int GroupOrder::index_of(const Permutation& p) const {
    uint64_t key = pack(p.images);
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, 0));
    if (it == lookup_.end() || it->first != key) throw std::invalid_argument("element not in group");
    return it->second;
}

int GroupOrder::compose_idx(int a, int b) const {
    if (!compose_table_.empty())
        return compose_table_[static_cast<size_t>(a) * static_cast<size_t>(size()) +
                              static_cast<size_t>(b)];
    return index_of(compose(elems_[static_cast<size_t>(a)], elems_[static_cast<size_t>(b)]));
}

std::vector<int> GroupOrder::transposition_indices() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (fix_[static_cast<size_t>(i)] == k_ - 2) out.push_back(i);
    return out;
}

}  // namespace rtns
