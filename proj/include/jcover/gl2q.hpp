#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

#include "jcover/errors.hpp"

namespace jcover::gl2q {

// An element of the adelized rational matrix group acting on the upper half
// plane: the quotient of positive-determinant rational 2x2 matrices by
// nonzero scalars. Canonical representative: primitive integer entries,
// positive determinant, and the first nonzero entry in reading order
// (a, b, c, d) positive. The determinant of the representative is the
// element's level.
class GroupElement {
  public:
    // Builds the canonical representative of the class of [[a,b],[c,d]].
    // Throws domain_error when the determinant is not positive.
    static GroupElement of(mpz_class a, mpz_class b, mpz_class c, mpz_class d);
    static GroupElement of(long a, long b, long c, long d);
    static GroupElement of_rationals(const mpq_class& a, const mpq_class& b,
                                     const mpq_class& c, const mpq_class& d);
    static GroupElement identity();

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    const mpz_class& d() const { return d_; }
    const mpz_class& level() const { return level_; }

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;
    mpz_class trace() const { return a_ + d_; }
    bool is_identity() const;

    bool operator==(const GroupElement& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    // Lexicographic on (a, b, c, d); fixes deterministic orderings.
    std::strong_ordering operator<=>(const GroupElement& o) const;

    // JSON array-of-arrays of decimal strings: [["a","b"],["c","d"]].
    std::string to_json() const;
    static GroupElement from_json(const std::string& text);

    std::string str() const;

  private:
    GroupElement(mpz_class a, mpz_class b, mpz_class c, mpz_class d, mpz_class level)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
          level_(std::move(level)) {}

    mpz_class a_, b_, c_, d_;
    mpz_class level_;
};

// The canonical upper-triangular representatives [[a,b],[0,d]] of the left
// SL2(Z)-cosets inside the level-N stratum: ad = N, 0 <= b < d,
// gcd(a,b,d) = 1, sorted by (a, b).
class CosetSystem {
  public:
    explicit CosetSystem(unsigned long level);

    unsigned long level() const { return level_; }
    const std::vector<GroupElement>& representatives() const { return reps_; }
    std::size_t size() const { return reps_.size(); }

    // Index of the representative in the same left coset as g.
    // Throws domain_error when level(g) != level().
    std::size_t index_of(const GroupElement& g) const;

  private:
    unsigned long level_;
    std::vector<GroupElement> reps_;
};

// psi(N) = N * prod_{p | N} (1 + 1/p): the number of left cosets at level N.
unsigned long psi(unsigned long n);

std::vector<GroupElement> coset_representatives(unsigned long level);

// True iff level(g) = level(h) and g h^{-1} is integral of determinant one
// after clearing content, i.e. lies in SL2(Z) up to sign.
bool same_left_coset(const GroupElement& g, const GroupElement& h);

// The canonical upper-triangular representative of the left coset of g.
GroupElement hermite_form(const GroupElement& g);

// Membership of a level-1 element in the principal congruence subgroup of
// level N: some sign lift has a = d = 1 and b = c = 0 mod N.
// Throws domain_error when level(g) != 1.
bool principal_congruence_member(const GroupElement& g, unsigned long n);

// Index in SL2(Z) (mod +-1) of the joint stabilizer of the tuple's left
// cosets, computed as the orbit size of the tuple of coset labels under the
// right permutation action of the generators S = [[0,-1],[1,0]] and
// T = [[1,1],[0,1]].
unsigned long stabilizer_index(const std::vector<GroupElement>& gs);

} // namespace jcover::gl2q
