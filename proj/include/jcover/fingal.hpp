#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jcover/gl2q.hpp"

namespace jcover::fingal {

enum class Flavor { psl, pgl };

// An element of PSL2(Z/N) or PGL2(Z/N), stored as the least lexicographic
// lift (a, b, c, d) among its scalar multiples. PSL elements have
// determinant 1, PGL elements a unit determinant; the scalar quotient is
// {+-1} for PSL and all units for PGL.
class FiniteGroupElement {
  public:
    static FiniteGroupElement make(unsigned long level, Flavor flavor, long a, long b,
                                   long c, long d);
    static FiniteGroupElement identity(unsigned long level, Flavor flavor);
    // reduction mod N of a level-1 group element (PSL flavor)
    static FiniteGroupElement reduce(const gl2q::GroupElement& g, unsigned long level);

    unsigned long level() const { return n_; }
    Flavor flavor() const { return flavor_; }
    const std::array<unsigned long, 4>& entries() const { return m_; }
    unsigned long det() const;
    bool is_identity() const;

    FiniteGroupElement operator*(const FiniteGroupElement& o) const;
    // the adjugate: equals the inverse in the scalar quotient
    FiniteGroupElement inverse() const;

    // truncation to a divisor level; a group homomorphism
    FiniteGroupElement truncate(unsigned long target_level) const;

    bool operator==(const FiniteGroupElement& o) const {
        return n_ == o.n_ && flavor_ == o.flavor_ && m_ == o.m_;
    }
    std::strong_ordering operator<=>(const FiniteGroupElement& o) const;

    std::string str() const;
    std::string to_json() const;
    static FiniteGroupElement from_json(const std::string& text, unsigned long level,
                                        Flavor flavor);

  private:
    FiniteGroupElement(unsigned long n, Flavor f, std::array<unsigned long, 4> m)
        : n_(n), flavor_(f), m_(m) {}
    unsigned long n_;
    Flavor flavor_;
    std::array<unsigned long, 4> m_; // canonical lift
};

// Full enumeration at level N >= 2, canonical forms, sorted, no duplicates.
// Memoized per (level, flavor).
const std::vector<FiniteGroupElement>& group_elements(unsigned long level,
                                                      Flavor flavor);

// An order-N cyclic subgroup of (Z/N)^2 named by its canonical generator:
// the least lexicographic (u, v) among unit multiples, gcd(u, v, N) = 1.
class CyclicSubgroup {
  public:
    static CyclicSubgroup of(unsigned long level, unsigned long u, unsigned long v);
    unsigned long level() const { return n_; }
    std::pair<unsigned long, unsigned long> generator() const { return {u_, v_}; }

    bool operator==(const CyclicSubgroup& o) const = default;
    std::strong_ordering operator<=>(const CyclicSubgroup& o) const = default;

    std::string str() const;

  private:
    CyclicSubgroup(unsigned long n, unsigned long u, unsigned long v)
        : n_(n), u_(u), v_(v) {}
    unsigned long n_, u_, v_;
};

// All order-N cyclic subgroups of (Z/N)^2; the count is psi(N). Memoized.
const std::vector<CyclicSubgroup>& cyclic_subgroups(unsigned long level);

// Matrix action sigma . <(u,v)> = <sigma (u,v)^T>, re-canonicalized.
CyclicSubgroup act_on_subgroups(const FiniteGroupElement& sigma,
                                const CyclicSubgroup& c);

// The kernel-lattice correspondence between cyclic subgroups and the
// upper-triangular coset representatives: <(u,v)> maps to the Hermite basis
// of the lattice spanned by (v, u), (N, 0), (0, N).
gl2q::GroupElement subgroup_to_coset(const CyclicSubgroup& c);
CyclicSubgroup coset_to_subgroup(const gl2q::GroupElement& g);

struct SubgroupCosetBijection {
    unsigned long level;
    // pairs (subgroup index in cyclic_subgroups, coset index in
    // coset_representatives), sorted by subgroup index
    std::vector<std::size_t> coset_of_subgroup;
    std::vector<std::size_t> subgroup_of_coset;
};
SubgroupCosetBijection subgroup_coset_bijection(unsigned long level);

// Permutation pi of coset indices induced by sigma through the bijection:
// pi[i] = coset index of sigma . (subgroup of coset i). Left action:
// pi_{sigma tau} = pi_sigma o pi_tau.
std::vector<std::size_t> coset_permutation(const FiniteGroupElement& sigma,
                                           unsigned long target_level);

// A point of the level-N fiber named relative to a fixed base point; the
// fiber is a free transitive PSL2(Z/N)-set, so labels multiply like group
// elements. Galois-style twists act on the right, the modular group on the
// left, and the two commute.
class TorsorLabel {
  public:
    explicit TorsorLabel(FiniteGroupElement e);
    static TorsorLabel base(unsigned long level) {
        return TorsorLabel(FiniteGroupElement::identity(level, Flavor::psl));
    }

    unsigned long level() const { return e_.level(); }
    const FiniteGroupElement& element() const { return e_; }

    TorsorLabel twisted(const FiniteGroupElement& sigma) const; // label * sigma
    TorsorLabel left_moved(const gl2q::GroupElement& gamma) const; // gamma * label

    bool operator==(const TorsorLabel& o) const { return e_ == o.e_; }
    std::strong_ordering operator<=>(const TorsorLabel& o) const { return e_ <=> o.e_; }

  private:
    FiniteGroupElement e_;
};

// Entrywise reduction to a divisor level; truncate(s * t) =
// truncate(s) * truncate(t).
TorsorLabel truncate(const TorsorLabel& label, unsigned long target_level);

// The relabeled fiber g -> fiber(g * sigma): the right torsor action on a
// fiber assignment, commuting with the left coset action.
std::map<TorsorLabel, std::size_t> galois_shadow(
    const FiniteGroupElement& sigma, const std::map<TorsorLabel, std::size_t>& fiber);

} // namespace jcover::fingal
