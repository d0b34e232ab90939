#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "jcover/fingal.hpp"
#include "jcover/verify.hpp"

using namespace jcover;
using fingal::CyclicSubgroup;
using fingal::FiniteGroupElement;
using fingal::Flavor;
using fingal::TorsorLabel;

TEST_CASE("group enumeration matches the closed form") {
    CHECK(fingal::group_elements(2, Flavor::psl).size() == 6);
    CHECK(fingal::group_elements(3, Flavor::psl).size() == 12);
    CHECK(fingal::group_elements(4, Flavor::psl).size() == 24);
    CHECK(fingal::group_elements(3, Flavor::pgl).size() == 24);
    for (unsigned long n = 2; n <= 9; ++n) {
        CHECK(fingal::group_elements(n, Flavor::psl).size() == verify::psl2_order(n));
        CHECK(fingal::group_elements(n, Flavor::pgl).size() == verify::pgl2_order(n));
    }
    CHECK_THROWS_AS(fingal::group_elements(1, Flavor::psl), domain_error);
}

TEST_CASE("canonical lifts and products") {
    auto a = FiniteGroupElement::make(5, Flavor::psl, 2, 0, 0, 3); // det 6 = 1 mod 5
    auto neg = FiniteGroupElement::make(5, Flavor::psl, -2, 0, 0, -3);
    CHECK(a == neg);

    CHECK_THROWS_AS(FiniteGroupElement::make(5, Flavor::psl, 2, 0, 0, 1), domain_error);
    CHECK_THROWS_AS(FiniteGroupElement::make(4, Flavor::pgl, 2, 0, 0, 1), domain_error);

    auto id = FiniteGroupElement::identity(7, Flavor::psl);
    for (const auto& g : fingal::group_elements(7, Flavor::psl)) {
        CHECK(g * g.inverse() == id);
        CHECK(g * id == g);
    }
}

TEST_CASE("cyclic subgroups") {
    auto subs2 = fingal::cyclic_subgroups(2);
    REQUIRE(subs2.size() == 3);
    CHECK(subs2[0] == CyclicSubgroup::of(2, 0, 1));
    CHECK(subs2[1] == CyclicSubgroup::of(2, 1, 0));
    CHECK(subs2[2] == CyclicSubgroup::of(2, 1, 1));

    CHECK(fingal::cyclic_subgroups(4).size() == 6);
    CHECK(fingal::cyclic_subgroups(1).size() == 1);
    for (unsigned long n = 1; n <= 12; ++n)
        CHECK(fingal::cyclic_subgroups(n).size() == gl2q::psi(n));

    CHECK_THROWS_AS(CyclicSubgroup::of(4, 2, 2), domain_error); // order 2, not 4
    // unit multiples name the same subgroup
    CHECK(CyclicSubgroup::of(5, 1, 2) == CyclicSubgroup::of(5, 3, 6));
}

TEST_CASE("subgroup-coset correspondence") {
    CHECK(fingal::subgroup_to_coset(CyclicSubgroup::of(2, 0, 1)) ==
          gl2q::GroupElement::of(1, 0, 0, 2));
    CHECK(fingal::subgroup_to_coset(CyclicSubgroup::of(2, 1, 0)) ==
          gl2q::GroupElement::of(2, 0, 0, 1));
    CHECK(fingal::subgroup_to_coset(CyclicSubgroup::of(2, 1, 1)) ==
          gl2q::GroupElement::of(1, 1, 0, 2));

    for (unsigned long n = 1; n <= 10; ++n) {
        auto bij = fingal::subgroup_coset_bijection(n);
        std::set<std::size_t> image(bij.coset_of_subgroup.begin(),
                                    bij.coset_of_subgroup.end());
        CHECK(image.size() == gl2q::psi(n)); // total and injective
        for (std::size_t s = 0; s < bij.coset_of_subgroup.size(); ++s)
            CHECK(bij.subgroup_of_coset[bij.coset_of_subgroup[s]] == s);
    }

    // round trip through the coset side
    for (const auto& c : fingal::cyclic_subgroups(6))
        CHECK(fingal::coset_to_subgroup(fingal::subgroup_to_coset(c)) == c);
}

TEST_CASE("matrix action on subgroups") {
    auto id = FiniteGroupElement::identity(2, Flavor::psl);
    auto swap = FiniteGroupElement::make(2, Flavor::psl, 0, 1, 1, 0);
    auto c10 = CyclicSubgroup::of(2, 1, 0);
    CHECK(fingal::act_on_subgroups(id, c10) == c10);
    CHECK(fingal::act_on_subgroups(swap, c10) == CyclicSubgroup::of(2, 0, 1));

    // a group action with transitive orbits
    for (unsigned long n : {2ul, 3ul, 4ul, 6ul}) {
        const auto& els = fingal::group_elements(n, Flavor::psl);
        const auto& subs = fingal::cyclic_subgroups(n);
        std::set<CyclicSubgroup> orbit;
        for (const auto& g : els) orbit.insert(fingal::act_on_subgroups(g, subs[0]));
        CHECK(orbit.size() == subs.size());
        for (const auto& g : els)
            for (const auto& h : els)
                for (const auto& c : {subs[0], subs.back()})
                    CHECK(fingal::act_on_subgroups(g * h, c) ==
                          fingal::act_on_subgroups(g, fingal::act_on_subgroups(h, c)));
    }

    CHECK_THROWS_AS(fingal::act_on_subgroups(id, CyclicSubgroup::of(3, 1, 0)),
                    domain_error);
}

TEST_CASE("truncation") {
    auto id12 = FiniteGroupElement::identity(12, Flavor::psl);
    CHECK(id12.truncate(4) == FiniteGroupElement::identity(4, Flavor::psl));
    CHECK(id12.truncate(12) == id12);
    CHECK_THROWS_AS(id12.truncate(5), domain_error);

    const auto& els = fingal::group_elements(6, Flavor::psl);
    for (const auto& a : els)
        for (const auto& b : els) {
            CHECK((a * b).truncate(3) == a.truncate(3) * b.truncate(3));
            CHECK((a * b).truncate(2) == a.truncate(2) * b.truncate(2));
        }

    auto lbl = TorsorLabel(FiniteGroupElement::make(12, Flavor::psl, 1, 5, 0, 1));
    CHECK(fingal::truncate(lbl, 4) ==
          TorsorLabel(FiniteGroupElement::make(4, Flavor::psl, 1, 1, 0, 1)));
}

TEST_CASE("fiber relabeling") {
    const auto& els = fingal::group_elements(2, Flavor::psl);
    std::map<TorsorLabel, std::size_t> fiber;
    for (std::size_t i = 0; i < els.size(); ++i)
        fiber.emplace(TorsorLabel(els[i]), i);

    auto id = FiniteGroupElement::identity(2, Flavor::psl);
    CHECK(fingal::galois_shadow(id, fiber) == fiber);

    for (const auto& a : els)
        for (const auto& b : els)
            CHECK(fingal::galois_shadow(a * b, fiber) ==
                  fingal::galois_shadow(a, fingal::galois_shadow(b, fiber)));

    // left modular action commutes with every right twist
    for (const auto& gamma :
         {gl2q::GroupElement::of(1, 1, 0, 1), gl2q::GroupElement::of(0, -1, 1, 0)})
        for (const auto& s : els) {
            std::map<TorsorLabel, std::size_t> moved;
            for (const auto& [lab, v] : fiber) moved.emplace(lab.left_moved(gamma), v);
            auto lhs = fingal::galois_shadow(s, moved);
            std::map<TorsorLabel, std::size_t> rhs;
            for (const auto& [lab, v] : fingal::galois_shadow(s, fiber))
                rhs.emplace(lab.left_moved(gamma), v);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("coset permutations form a left action") {
    for (unsigned long n : {2ul, 3ul, 4ul}) {
        const auto& els = fingal::group_elements(n, Flavor::psl);
        for (const auto& a : els)
            for (const auto& b : els) {
                auto pa = fingal::coset_permutation(a, n);
                auto pb = fingal::coset_permutation(b, n);
                auto pab = fingal::coset_permutation(a * b, n);
                for (std::size_t i = 0; i < pab.size(); ++i)
                    CHECK(pab[i] == pa[pb[i]]);
            }
    }
}
