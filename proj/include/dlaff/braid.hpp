/*
  braid.hpp

  Positive braid monoid attached to a finite Coxeter system, with elements
  kept in left-greedy normal form.  A braid is a list of nonidentity simple
  factors (copies of W) such that every left descent of a factor is a right
  descent of its predecessor; this form is unique, so equality is list
  equality.  Normalization slides letters leftward pairwise until the chain
  stabilizes.
*/

#ifndef DLAFF_BRAID_HPP
#define DLAFF_BRAID_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "dlaff/coxeter.hpp"

namespace dlaff {

struct NotDivisor : std::runtime_error {
  explicit NotDivisor(const std::string& what) : std::runtime_error(what) {}
};

class BraidWord {
public:
  static BraidWord identity(const CoxeterSystem& sys) {
    BraidWord b;
    b.sys_ = &sys;
    return b;
  }

  // image of a group element as a simple braid
  static BraidWord from_element(const Element& w) {
    BraidWord b;
    b.sys_ = &w.system();
    if (!w.is_identity()) b.factors_.push_back(w);
    return b;
  }

  static BraidWord from_factors(const CoxeterSystem& sys,
                                std::vector<Element> factors) {
    BraidWord b;
    b.sys_ = &sys;
    b.factors_ = std::move(factors);
    b.normalize();
    return b;
  }

  const CoxeterSystem& system() const { return *sys_; }
  bool is_identity() const { return factors_.empty(); }
  int num_factors() const { return int(factors_.size()); }
  const Element& factor(int i) const { return factors_[std::size_t(i)]; }
  const std::vector<Element>& factors() const { return factors_; }

  // sum of factor lengths; additive under the monoid product
  int total_length() const {
    int l = 0;
    for (const Element& f : factors_) l += f.length();
    return l;
  }

  BraidWord operator*(const BraidWord& o) const {
    BraidWord r;
    r.sys_ = sys_;
    r.factors_ = factors_;
    r.factors_.insert(r.factors_.end(), o.factors_.begin(), o.factors_.end());
    r.normalize();
    return r;
  }

  bool operator==(const BraidWord& o) const {
    if (factors_.size() != o.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i] != o.factors_[i]) return false;
    return true;
  }
  bool operator!=(const BraidWord& o) const { return !(*this == o); }

private:
  // make (a,b) left-weighted by sliding initial letters of b onto a;
  // b's inverse is carried along so each slide is one table pass
  static bool fix_pair(Element& a, Element& b) {
    const CoxeterSystem& sys = a.system();
    int n = sys.num_positive_roots();
    Element binv = b.inverse();
    bool changed = false;
    while (!binv.is_identity()) {
      int pick = -1;
      for (int s = 0; s < sys.rank(); ++s)
        if (binv.act(s) >= n && a.act(s) < n) {  // s starts b, s extends a
          pick = s;
          break;
        }
      if (pick < 0) break;
      a = a.right_mul_gen(pick);
      binv = binv.right_mul_gen(pick);
      changed = true;
    }
    if (changed) b = binv.inverse();
    return changed;
  }

  void normalize() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::size_t keep = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i].is_identity()) {
          if (keep != i) factors_[keep] = std::move(factors_[i]);
          ++keep;
        }
      if (keep != factors_.size()) {
        factors_.resize(keep);
        changed = true;
      }
      for (std::size_t i = factors_.size(); i-- > 1;)
        changed |= fix_pair(factors_[i - 1], factors_[i]);
    }
  }

  const CoxeterSystem* sys_ = nullptr;
  std::vector<Element> factors_;
};

// a simple element divides a braid iff it is a prefix of the first factor
inline bool left_divides_simple(const Element& x, const BraidWord& b) {
  if (x.is_identity()) return true;
  if (b.is_identity()) return false;
  return is_prefix(x, b.factor(0));
}

inline BraidWord left_quotient_simple(const Element& x, const BraidWord& b) {
  if (!left_divides_simple(x, b))
    throw NotDivisor("element is not a left divisor of the braid");
  if (x.is_identity()) return b;
  std::vector<Element> factors = b.factors();
  factors[0] = x.inverse() * factors[0];
  return BraidWord::from_factors(b.system(), std::move(factors));
}

inline BraidWord delta(const CoxeterSystem& sys, GenSet I) {
  return BraidWord::from_element(longest_element(sys, I));
}

inline BraidWord full_twist(const CoxeterSystem& sys, GenSet I) {
  BraidWord d = delta(sys, I);
  return d * d;
}

// w · F(w) · F²(w) ··· F^{d-1}(w) in the braid monoid
inline BraidWord twisted_power(const Element& w, const DiagramAutomorphism& F,
                               int d) {
  if (d < 0) throw std::invalid_argument("twisted_power: negative exponent");
  std::vector<Element> factors;
  factors.reserve(std::size_t(d));
  Element cur = w;
  for (int i = 0; i < d; ++i) {
    factors.push_back(cur);
    if (i + 1 < d) cur = F.apply(cur);
  }
  return BraidWord::from_factors(w.system(), std::move(factors));
}

inline GenSet braid_support(const BraidWord& b) {
  GenSet out = 0;
  for (const Element& f : b.factors()) out |= support(f);
  return out;
}

}  // namespace dlaff

#endif
