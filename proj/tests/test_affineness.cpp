#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "dlaff/affineness.hpp"
#include "dlaff/classes.hpp"
#include "dlaff/coxeter.hpp"

using namespace dlaff;

namespace {

// rebuild the certified identity from the verdict's own data
void verify_verdict(const Element& w, const DiagramAutomorphism& F,
                    const Verdict& v) {
  if (!v.established()) return;
  const CoxeterSystem& sys = w.system();
  switch (v.reason) {
    case ReasonKind::MinimalLength: {
      CHECK(w.length() == f_class_of(w, F).min_length());
      break;
    }
    case ReasonKind::BraidDivisibility: {
      REQUIRE(v.has_witness);
      Element wi = longest_element(sys, v.reduced_support);
      BraidWord rhs = BraidWord::from_element(wi);
      for (const Element& f : v.witness_factors)
        rhs = rhs * BraidWord::from_element(f);
      CHECK(rhs == twisted_power(w, F, v.d));
      break;
    }
    case ReasonKind::FullTwist: {
      CHECK(twisted_power(w, F, v.d) == full_twist(sys, v.reduced_support));
      break;
    }
    case ReasonKind::CyclicShiftTransfer: {
      REQUIRE_FALSE(v.path.empty());
      CHECK(v.path.front() == w);
      // consecutive path entries are cyclic neighbors
      for (std::size_t i = 0; i + 1 < v.path.size(); ++i) {
        auto nb = cyclic_neighbors(v.path[i], F);
        CHECK(std::count(nb.begin(), nb.end(), v.path[i + 1]) == 1);
      }
      const Element& target = v.path.back();
      GenSet it = support_reduce(target, F);
      if (v.inner_reason == ReasonKind::BraidDivisibility) {
        REQUIRE(v.has_witness);
        BraidWord rhs = BraidWord::from_element(longest_element(sys, it));
        for (const Element& f : v.witness_factors)
          rhs = rhs * BraidWord::from_element(f);
        CHECK(rhs == twisted_power(target, F, v.d));
      } else {
        REQUIRE(v.inner_reason == ReasonKind::FullTwist);
        CHECK(twisted_power(target, F, v.d) == full_twist(sys, it));
      }
      break;
    }
  }
}

}  // namespace

TEST_CASE("support reduction sets") {
  auto a3 = CoxeterSystem::from_type("A3");
  auto split = DiagramAutomorphism::identity(a3);
  DiagramAutomorphism flip(a3, {2, 1, 0});
  Element e = Element::identity(a3);
  Element s1 = Element::generator(a3, 0);

  CHECK(support_reduce(e, split) == 0);
  CHECK(support_reduce(s1, split) == GenSet{0b001});
  CHECK(support_reduce(s1, flip) == GenSet{0b101});  // F-orbit of s1

  auto b5 = CoxeterSystem::from_type("B5");
  auto f5 = DiagramAutomorphism::identity(b5);
  Element w = evaluate_word(b5, {1, 0, 3, 2, 1, 0, 1, 4, 3, 2, 1, 0, 1, 2, 3});
  CHECK(support_reduce(w, f5) == b5.full_set());
}

TEST_CASE("parabolic subsystems restrict and embed") {
  auto b3 = CoxeterSystem::from_type("B3");
  // {s2, s3} carries the 4-bond
  Subsystem sub = build_subsystem(b3, GenSet{0b110});
  REQUIRE(sub.sys.rank() == 2);
  CHECK(sub.sys.labels() == std::vector<std::string>{"s2", "s3"});
  CHECK(sub.sys.m(0, 1) == 4);
  CHECK(sub.sys.num_positive_roots() == 4);

  Element w = evaluate_word(b3, {1, 2, 1});
  Element ws = restrict_element(sub, w);
  CHECK(ws.length() == 3);
  CHECK(embed_element(sub, ws) == w);
  CHECK_THROWS_AS(restrict_element(sub, Element::generator(b3, 0)),
                  std::invalid_argument);
  CHECK(embed_genset(sub, GenSet{0b01}) == GenSet{0b010});

  auto d4 = CoxeterSystem::from_type("D4");
  DiagramAutomorphism tri(d4, {2, 1, 3, 0});
  Subsystem outer = build_subsystem(d4, GenSet{0b1101});
  auto rt = restrict_automorphism(outer, tri);
  CHECK(rt.order() == 3);
  // the restriction of triality cycles the three commuting generators
  CHECK(rt.map_gen(0) == 1);
  CHECK(rt.map_gen(1) == 2);
  CHECK(rt.map_gen(2) == 0);

  Subsystem fixed = build_subsystem(d4, GenSet{0b0010});
  CHECK(restrict_automorphism(fixed, tri).is_identity());
  CHECK_THROWS_AS(restrict_automorphism(build_subsystem(d4, GenSet{0b0001}), tri),
                  std::invalid_argument);
}

TEST_CASE("minimal length criterion") {
  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);
  Element e = Element::identity(a2);
  Element s1 = Element::generator(a2, 0);
  Element w0 = longest_element(a2, a2.full_set());

  CHECK(min_length_check(e, F).established());
  CHECK(min_length_check(s1, F).established());
  CHECK_FALSE(min_length_check(w0, F).established());  // class min length is 1

  auto a3 = CoxeterSystem::from_type("A3");
  auto F3 = DiagramAutomorphism::identity(a3);
  Element cox = evaluate_word(a3, {0, 1, 2});
  Verdict v = min_length_check(cox, F3);
  CHECK(v.established());
  CHECK(v.reason == ReasonKind::MinimalLength);
}

TEST_CASE("divisibility criterion, small cases") {
  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);
  Element e = Element::identity(a2);
  Element s1 = Element::generator(a2, 0);

  Verdict ve = divisibility_check(e, F, 3);
  CHECK(ve.established());
  CHECK(ve.d == 1);
  CHECK(ve.reduced_support == 0);
  CHECK(ve.witness_factors.empty());
  verify_verdict(e, F, ve);

  Verdict v1 = divisibility_check(s1, F, 3);
  CHECK(v1.established());
  CHECK(v1.d == 1);
  CHECK(v1.reduced_support == GenSet{0b01});
  verify_verdict(s1, F, v1);

  // the longest element divides its own first power
  Element w0 = longest_element(a2, a2.full_set());
  Verdict v0 = divisibility_check(w0, F, 1);
  CHECK(v0.established());
  CHECK(v0.d == 1);
  verify_verdict(w0, F, v0);

  // once divisible, divisible at every larger exponent
  for (int d = v0.d; d <= 4; ++d)
    CHECK(left_divides_simple(w0, twisted_power(w0, F, d)));
}

TEST_CASE("divisibility criterion is not universal") {
  // s2·s1·s2 in B2: every twisted power has normal form [s2s1s2, ...],
  // whose first factor never reaches the longest element
  auto b2 = CoxeterSystem::from_type("B2");
  auto F = DiagramAutomorphism::identity(b2);
  Element w = evaluate_word(b2, {1, 0, 1});
  Verdict v = divisibility_check(w, F, 8);
  CHECK_FALSE(v.established());
  CHECK(v.attempted_d_max == 8);
}

TEST_CASE("full twist criterion") {
  auto b2 = CoxeterSystem::from_type("B2");
  auto F2 = DiagramAutomorphism::identity(b2);
  Element w0 = longest_element(b2, b2.full_set());
  Verdict v = full_twist_check(w0, F2, 2);
  CHECK(v.established());
  CHECK(v.reason == ReasonKind::FullTwist);
  CHECK(v.d == 2);
  verify_verdict(w0, F2, v);
  CHECK_FALSE(full_twist_check(w0, F2, 1).established());

  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);
  Element c = evaluate_word(a2, {0, 1});
  CHECK(full_twist_check(c, F, 3).established());
  CHECK_FALSE(full_twist_check(c, F, 2).established());
}

TEST_CASE("cyclic search transfers a braid certificate") {
  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);
  Element c = evaluate_word(a2, {1, 0});  // s2·s1

  Verdict v = cyclic_search(c, F, 3);
  CHECK(v.established());
  CHECK(v.reason == ReasonKind::CyclicShiftTransfer);
  CHECK(v.path.front() == c);
  verify_verdict(c, F, v);

  // an element passing directly yields a single-node path
  Element w0 = longest_element(a2, a2.full_set());
  Verdict v0 = cyclic_search(w0, F, 2);
  CHECK(v0.established());
  REQUIRE(v0.path.size() == 1);
  CHECK(v0.path.front() == w0);

  // the stranded reflection conjugate: no shift can help
  auto b2 = CoxeterSystem::from_type("B2");
  auto F2 = DiagramAutomorphism::identity(b2);
  Element stuck = evaluate_word(b2, {1, 0, 1});
  CHECK_FALSE(cyclic_search(stuck, F2, 8).established());
}

TEST_CASE("aggregated verdict: basics") {
  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);

  Verdict ve = certify(Element::identity(a2), F);
  CHECK(ve.established());
  CHECK(ve.reason == ReasonKind::MinimalLength);
  CHECK(ve.reduced_support == 0);

  Verdict v1 = certify(Element::generator(a2, 0), F);
  CHECK(v1.established());
  CHECK(v1.reason == ReasonKind::MinimalLength);
  CHECK(v1.reduced_support == GenSet{0b01});

  // the longest element of A2 is not minimal; divisibility picks it up
  Element w0 = longest_element(a2, a2.full_set());
  Verdict v0 = certify(w0, F);
  CHECK(v0.established());
  CHECK(v0.reason == ReasonKind::BraidDivisibility);
  CHECK(v0.d == 1);
  verify_verdict(w0, F, v0);
}

TEST_CASE("aggregated verdict: honest Inconclusive") {
  auto b2 = CoxeterSystem::from_type("B2");
  auto F = DiagramAutomorphism::identity(b2);
  Element w = evaluate_word(b2, {1, 0, 1});
  Verdict v = certify(w, F);
  CHECK_FALSE(v.established());
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(v.attempted_d_max == 4);  // 2 · twisted_order, (s2s1s2)² = 1
  CHECK(v.reduced_support == b2.full_set());

  // a larger scan range does not change the outcome
  VerdictOptions opt;
  opt.d_max = 12;
  CHECK_FALSE(certify(w, F, opt).established());

  // with every criterion disabled the verdict is trivially inconclusive
  VerdictOptions none;
  none.use_min_length = false;
  none.use_divisibility = false;
  none.use_full_twist = false;
  none.use_cyclic_search = false;
  Verdict v2 = certify(Element::identity(b2), F, none);
  CHECK_FALSE(v2.established());
}

TEST_CASE("verdict options gate individual criteria") {
  auto a2 = CoxeterSystem::from_type("A2");
  auto F = DiagramAutomorphism::identity(a2);
  Element s1 = Element::generator(a2, 0);

  VerdictOptions no_min;
  no_min.use_min_length = false;
  Verdict v = certify(s1, F, no_min);
  CHECK(v.established());
  CHECK(v.reason == ReasonKind::BraidDivisibility);
  CHECK(v.d == 1);

  VerdictOptions ft_only;
  ft_only.use_min_length = false;
  ft_only.use_divisibility = false;
  ft_only.use_cyclic_search = false;
  Verdict v2 = certify(s1, F, ft_only);
  CHECK(v2.established());
  CHECK(v2.reason == ReasonKind::FullTwist);
  CHECK(v2.d == 2);  // s1·s1 is the full twist of the rank-1 subsystem
}

TEST_CASE("support reduction maps certificates back to the ambient system") {
  auto a3 = CoxeterSystem::from_type("A3");
  DiagramAutomorphism flip(a3, {2, 1, 0});
  Element s1 = Element::generator(a3, 0);

  VerdictOptions no_min;
  no_min.use_min_length = false;
  Verdict v = certify(s1, flip, no_min);
  CHECK(v.established());
  CHECK(v.reduced_support == GenSet{0b101});
  for (const Element& f : v.witness_factors) {
    CHECK(&f.system() == &a3);  // ambient elements, not subsystem ones
    CHECK((support(f) & ~GenSet{0b101}) == 0);
  }
  verify_verdict(s1, flip, v);
}

TEST_CASE("verdict agrees with and without support reduction") {
  struct Case {
    const char* type;
    std::vector<int> sigma;
  };
  std::vector<Case> cases = {{"A2", {}}, {"B3", {}}, {"A3", {2, 1, 0}}};
  for (const auto& [type, sigma] : cases) {
    auto sys = CoxeterSystem::from_type(type);
    DiagramAutomorphism F = sigma.empty()
                                ? DiagramAutomorphism::identity(sys)
                                : DiagramAutomorphism(sys, sigma);
    auto group = enumerate_group(sys);
    for (const Element& w : group) {
      Verdict with = certify(w, F);
      VerdictOptions flat;
      flat.use_support_reduction = false;
      Verdict without = certify(w, F, flat);
      INFO(type << ", length " << w.length());
      CHECK(with.status == without.status);
      verify_verdict(w, F, with);
      verify_verdict(w, F, without);
    }
  }
}

TEST_CASE("good minimal elements pass divisibility at the class exponent") {
  auto sys = CoxeterSystem::from_type("B3");
  auto F = DiagramAutomorphism::identity(sys);
  for (const auto& cls : all_f_classes(sys, F)) {
    auto good = find_good(cls, F);
    REQUIRE(good.has_value());
    Verdict v = divisibility_check(good->elt, F, cls.d());
    CHECK(v.established());
    CHECK(v.d <= cls.d());
    verify_verdict(good->elt, F, v);
  }
}

TEST_CASE("B5: the marked element is certified") {
  auto b5 = CoxeterSystem::from_type("B5");
  auto F = DiagramAutomorphism::identity(b5);
  Element w = evaluate_word(b5, {1, 0, 3, 2, 1, 0, 1, 4, 3, 2, 1, 0, 1, 2, 3});

  Verdict direct = divisibility_check(w, F, 5);
  CHECK(direct.established());
  CHECK(direct.d <= 5);
  verify_verdict(w, F, direct);

  Verdict full = certify(w, F);
  CHECK(full.established());
  verify_verdict(w, F, full);

  // the full twist test fails at d = 5: the fifth power is the cube of
  // delta, not its square
  CHECK_FALSE(full_twist_check(w, F, 5).established());

  // the shifted element is certified as well
  Element v = evaluate_word(b5, {1, 0, 3, 2, 1, 0, 1, 2, 3, 4, 3, 2, 1, 0, 1});
  Verdict shifted = certify(v, F);
  CHECK(shifted.established());
  verify_verdict(v, F, shifted);
}
