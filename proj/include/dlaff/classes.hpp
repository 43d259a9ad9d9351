/*
  classes.hpp

  Twisted conjugacy combinatorics: F-conjugacy classes and their
  minimal-length strata, the class invariant d (order of w·F in the
  extended group), the cyclic-shift relation, and good elements, i.e.
  minimal elements whose twisted braid power factors into a nested chain
  of parabolic squares.

  All functions return sorted vectors so downstream output is
  deterministic; no unordered container order ever escapes.
*/

#ifndef DLAFF_CLASSES_HPP
#define DLAFF_CLASSES_HPP

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dlaff/braid.hpp"
#include "dlaff/coxeter.hpp"

namespace dlaff {

struct GroupTooLarge : std::runtime_error {
  explicit GroupTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct MisuseNotMinimal : std::runtime_error {
  explicit MisuseNotMinimal(const std::string& what) : std::runtime_error(what) {}
};

struct EnumLimits {
  std::size_t max_group_size = 1000000;
};

// stable order: by length, then lexicographically by canonical word
inline void sort_elements(std::vector<Element>& v) {
  std::vector<std::pair<std::vector<int>, Element>> keyed;
  keyed.reserve(v.size());
  for (Element& w : v) keyed.emplace_back(canonical_word(w), std::move(w));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  v.clear();
  for (auto& [word, w] : keyed) v.push_back(std::move(w));
}

inline std::vector<Element> enumerate_group(const CoxeterSystem& sys,
                                            EnumLimits limits = {}) {
  std::vector<Element> out{Element::identity(sys)};
  std::unordered_set<Element, ElementHash> seen{out.front()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    Element w = out[head];  // copy: out may reallocate
    for (int s = 0; s < sys.rank(); ++s) {
      Element ws = w.right_mul_gen(s);
      if (seen.insert(ws).second) {
        if (out.size() >= limits.max_group_size)
          throw GroupTooLarge("group enumeration exceeded " +
                              std::to_string(limits.max_group_size) + " elements");
        out.push_back(std::move(ws));
      }
    }
  }
  return out;
}

// smallest k with w·F(w)···F^{k-1}(w) = 1 and F^k = id; the order of the
// pair (w, F) under twisted iteration, so it is constant on F-classes
inline int twisted_order(const Element& w, const DiagramAutomorphism& F) {
  Element prod = Element::identity(w.system());
  Element cur = w;
  int k = 0;
  for (;;) {
    prod = prod * cur;
    cur = F.apply(cur);
    ++k;
    if (prod.is_identity() && k % F.order() == 0) return k;
    if (k > 10000000)
      throw std::logic_error("twisted_order: no period found (unreachable)");
  }
}

class FConjugacyClass {
public:
  FConjugacyClass(std::vector<Element> members, std::vector<Element> c_min,
                  int min_length, int d)
      : members_(std::move(members)),
        c_min_(std::move(c_min)),
        min_length_(min_length),
        d_(d) {
    for (const Element& w : members_) lookup_.insert(w);
  }

  const Element& representative() const { return c_min_.front(); }
  const std::vector<Element>& members() const { return members_; }
  const std::vector<Element>& c_min() const { return c_min_; }
  int min_length() const { return min_length_; }
  int d() const { return d_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const Element& w) const { return lookup_.count(w) > 0; }

private:
  std::vector<Element> members_;
  std::vector<Element> c_min_;  // sorted; front is the representative
  int min_length_;
  int d_;
  std::unordered_set<Element, ElementHash> lookup_;
};

// orbit of w under x ↦ s·x·F(s); the elementary moves generate the full
// twisted conjugation action because S generates W
inline FConjugacyClass f_class_of(const Element& w, const DiagramAutomorphism& F) {
  const CoxeterSystem& sys = w.system();
  std::vector<Element> members{w};
  std::unordered_set<Element, ElementHash> seen{w};
  for (std::size_t head = 0; head < members.size(); ++head) {
    Element x = members[head];
    for (int s = 0; s < sys.rank(); ++s) {
      Element y = x.left_mul_gen(s).right_mul_gen(F.map_gen(s));
      if (seen.insert(y).second) members.push_back(std::move(y));
    }
  }
  sort_elements(members);
  int min_length = members.front().length();
  std::vector<Element> c_min;
  for (const Element& x : members) {
    if (x.length() != min_length) break;  // members sorted by length
    c_min.push_back(x);
  }
  int d = twisted_order(c_min.front(), F);
  return FConjugacyClass(std::move(members), std::move(c_min), min_length, d);
}

inline int class_d(const FConjugacyClass& cls, const DiagramAutomorphism& F) {
  return twisted_order(cls.representative(), F);
}

// partition of W into F-classes, ordered by (min length, representative word)
inline std::vector<FConjugacyClass> all_f_classes(const CoxeterSystem& sys,
                                                  const DiagramAutomorphism& F,
                                                  EnumLimits limits = {}) {
  std::vector<Element> all = enumerate_group(sys, limits);
  sort_elements(all);
  std::unordered_set<Element, ElementHash> assigned;
  std::vector<FConjugacyClass> out;
  for (const Element& w : all) {
    if (assigned.count(w)) continue;
    FConjugacyClass cls = f_class_of(w, F);
    for (const Element& x : cls.members()) assigned.insert(x);
    out.push_back(std::move(cls));
  }
  // `all` is sorted, so classes already appear by (min length, rep word)
  return out;
}

/* ------------------------------------------------------------------ */
/* cyclic shift */

// { y·F(x) : w = x·y, lengths additive, and ℓ(y·F(x)) = ℓ(w) }, over all
// weak-order prefixes x of w; always contains F(w) (x = w) and w (x = 1)
inline std::vector<Element> cyclic_neighbors(const Element& w,
                                             const DiagramAutomorphism& F) {
  const CoxeterSystem& sys = w.system();
  int n = sys.num_positive_roots();
  std::unordered_set<Element, ElementHash> found;
  std::unordered_set<Element, ElementHash> xs_seen;
  // states (x, y⁻¹) with y = x⁻¹w; extending x by a left descent of y
  // keeps the decomposition additive
  std::vector<std::pair<Element, Element>> stack;
  stack.emplace_back(Element::identity(sys), w.inverse());
  xs_seen.insert(stack.front().first);
  while (!stack.empty()) {
    auto [x, yinv] = std::move(stack.back());
    stack.pop_back();
    Element y = yinv.inverse();
    Element z = y * F.apply(x);
    if (z.length() == w.length()) found.insert(std::move(z));
    for (int s = 0; s < sys.rank(); ++s) {
      if (yinv.act(s) < n) continue;  // s is not a left descent of y
      Element xs = x.right_mul_gen(s);
      if (xs_seen.insert(xs).second)
        stack.emplace_back(std::move(xs), yinv.right_mul_gen(s));
    }
  }
  std::vector<Element> out(found.begin(), found.end());
  sort_elements(out);
  return out;
}

// closure of w under cyclic shifts.  One step w → y·F(x) can always be
// undone by further forward steps (rotate through F(w), …, F^ord(w) = w),
// so forward closure is the full equivalence class
inline std::vector<Element> cyclic_component(const Element& w,
                                             const DiagramAutomorphism& F) {
  std::vector<Element> out{w};
  std::unordered_set<Element, ElementHash> seen{w};
  for (std::size_t head = 0; head < out.size(); ++head) {
    Element cur = out[head];
    for (const Element& z : cyclic_neighbors(cur, F))
      if (seen.insert(z).second) out.push_back(z);
  }
  sort_elements(out);
  return out;
}

inline bool cyclic_equivalent(const Element& w, const Element& w2,
                              const DiagramAutomorphism& F) {
  if (w.length() != w2.length()) return false;
  if (w == w2) return true;
  std::vector<Element> frontier{w};
  std::unordered_set<Element, ElementHash> seen{w};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    Element cur = frontier[head];
    for (const Element& z : cyclic_neighbors(cur, F)) {
      if (z == w2) return true;
      if (seen.insert(z).second) frontier.push_back(z);
    }
  }
  return false;
}

/* ------------------------------------------------------------------ */
/* good elements */

// nested chain I_1 ⊇ I_2 ⊇ … ⊇ I_r of parabolic squares
struct GoodChain {
  std::vector<GenSet> sets;
};

// greedy peeling of β = w·F(w)···F^{d-1}(w): each round must split off the
// square of the longest element of the braid's support.  Greedy is
// complete: in any decomposition into nested parabolic squares the first
// subset necessarily equals the support of the whole braid.
inline std::optional<GoodChain> good_chain(const Element& w,
                                           const DiagramAutomorphism& F, int d) {
  const CoxeterSystem& sys = w.system();
  BraidWord beta = twisted_power(w, F, d);
  GoodChain chain;
  while (!beta.is_identity()) {
    GenSet j = braid_support(beta);
    if (!chain.sets.empty() && (j & ~chain.sets.back()) != 0)
      return std::nullopt;  // supports must be nonincreasing
    Element wj = longest_element(sys, j);
    for (int half = 0; half < 2; ++half) {
      if (!left_divides_simple(wj, beta)) return std::nullopt;
      beta = left_quotient_simple(wj, beta);
    }
    chain.sets.push_back(j);
  }
  return chain;
}

// goodness is defined on minimal-length class members only; elsewhere the
// call is a contract violation, not a false
inline std::optional<GoodChain> is_good(const Element& w,
                                        const DiagramAutomorphism& F) {
  FConjugacyClass cls = f_class_of(w, F);
  if (w.length() != cls.min_length())
    throw MisuseNotMinimal("is_good: element has length " +
                           std::to_string(w.length()) +
                           " but its class has minimal length " +
                           std::to_string(cls.min_length()));
  return good_chain(w, F, cls.d());
}

struct GoodElement {
  Element elt;
  GoodChain chain;
};

// first good element of c_min in canonical-word order
inline std::optional<GoodElement> find_good(const FConjugacyClass& cls,
                                            const DiagramAutomorphism& F) {
  for (const Element& x : cls.c_min())
    if (auto chain = good_chain(x, F, cls.d()))
      return GoodElement{x, std::move(*chain)};
  return std::nullopt;
}

}  // namespace dlaff

#endif
