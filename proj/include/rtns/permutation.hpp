#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rtns {

// Element of S_k, stored as 0-based image array: p.images[i] = p(i).
// Printed in 1-based cycle notation, e.g. "(1 2)(3 4)".
struct Permutation {
    std::vector<uint8_t> images;

    Permutation() = default;
    explicit Permutation(std::vector<uint8_t> imgs);
    static Permutation identity(int k);
    // Parse 1-based cycle notation: "(1 2)(3 4)", "e", or "()" for identity.
    static Permutation from_cycles(const std::string& s, int k);

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[static_cast<size_t>(i)]; }
    bool operator==(const Permutation& o) const { return images == o.images; }

    bool is_identity() const;
    int fixed_points() const;
    std::string cycle_string() const;  // 1-based, "e" for identity
};

// (p*q)(i) = p(q(i))
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
// g p g^{-1}
Permutation conjugate(const Permutation& p, const Permutation& g);
int cycle_count(const Permutation& p);
// partition of k, parts descending
std::vector<int> cycle_type(const Permutation& p);

// All k! elements of S_k in the block order used for transfer-matrix bases:
// elements with more fixed points first; elements sharing a fixed-point set
// contiguous (groups ordered by moved set, ascending lex); within a group,
// conjugacy classes ordered by cycle type (descending lex); ties broken by
// image-array lex order. Identity is always first.
class GroupOrder {
  public:
    explicit GroupOrder(int k);

    int k() const { return k_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const Permutation& operator[](int i) const { return elems_[static_cast<size_t>(i)]; }
    const std::vector<Permutation>& elements() const { return elems_; }

    int index_of(const Permutation& p) const;

    // index-level group operations (precomputed for k <= 6, lazy otherwise)
    int compose_idx(int a, int b) const;  // index of elems[a] * elems[b]
    int inverse_idx(int a) const { return inv_[static_cast<size_t>(a)]; }
    int cycles_idx(int a) const { return cyc_[static_cast<size_t>(a)]; }
    int fixed_idx(int a) const { return fix_[static_cast<size_t>(a)]; }

    // cycle-type class machinery: classes indexed 0..nclasses-1 in first-seen order
    int class_of(int a) const { return cls_[static_cast<size_t>(a)]; }
    int num_classes() const { return static_cast<int>(class_reps_.size()); }
    const std::vector<int>& class_type(int c) const { return class_types_[static_cast<size_t>(c)]; }
    int class_rep(int c) const { return class_reps_[static_cast<size_t>(c)]; }

    // indices of all transpositions, in order
    std::vector<int> transposition_indices() const;

  private:
    static uint64_t pack(const std::vector<uint8_t>& v);

    int k_;
    std::vector<Permutation> elems_;
    std::vector<int> inv_, cyc_, fix_, cls_;
    std::vector<std::vector<int>> class_types_;
    std::vector<int> class_reps_;
    std::vector<uint16_t> compose_table_;  // k! x k!, only if k <= 6
    std::vector<std::pair<uint64_t, int>> lookup_;  // sorted packed-image -> index
};

constexpr int kMaxDegree = 8;

}  // namespace rtns
