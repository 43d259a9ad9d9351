/*
  coxeter.hpp

  Finite crystallographic Coxeter systems (W,S) realized on their root
  systems.  A system is built from a Cartan or Coxeter matrix; the positive
  roots are enumerated once by orbit closure and every group element is
  stored as the induced permutation of signed roots.  Length, descents,
  prefix order and canonical words all reduce to sign bookkeeping on that
  permutation.

  Elements keep a raw pointer to their system; the system is immovable and
  must outlive them.
*/

#ifndef DLAFF_COXETER_HPP
#define DLAFF_COXETER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlaff {

// subset of the generators, bit s = generator index s
using GenSet = std::uint32_t;

constexpr int kMaxRank = 32;

inline int gen_count(GenSet g) {
  int n = 0;
  while (g) { n += g & 1u; g >>= 1; }
  return n;
}

struct NonCrystallographic : std::runtime_error {
  explicit NonCrystallographic(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteType : std::runtime_error {
  explicit NonFiniteType(const std::string& what) : std::runtime_error(what) {}
};

struct BuildLimits {
  // positive-root cap; closure beyond this is treated as non-finite
  int max_positive_roots = 10000;
};

class CoxeterSystem {
public:
  using RootIndex = std::uint16_t;  // signed root index in [0, 2N)

  static CoxeterSystem from_cartan(std::vector<std::string> labels,
                                   std::vector<std::vector<int>> cartan,
                                   BuildLimits limits = {}) {
    return CoxeterSystem(std::move(labels), std::move(cartan), limits);
  }

  static CoxeterSystem from_coxeter_matrix(std::vector<std::string> labels,
                                           const std::vector<std::vector<int>>& m,
                                           BuildLimits limits = {}) {
    return CoxeterSystem(std::move(labels), cartan_from_coxeter(m), limits);
  }

  static CoxeterSystem from_type(const std::string& name, BuildLimits limits = {});

  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;
  CoxeterSystem(CoxeterSystem&&) = delete;
  CoxeterSystem& operator=(CoxeterSystem&&) = delete;

  int rank() const { return rank_; }
  int num_positive_roots() const { return nroots_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int s) const { return labels_[s]; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return cox_; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  int m(int i, int j) const { return cox_[i][j]; }
  const std::vector<int>& root(int p) const { return roots_[p]; }

  std::optional<int> index_of_label(const std::string& lab) const {
    for (int s = 0; s < rank_; ++s)
      if (labels_[s] == lab) return s;
    return std::nullopt;
  }

  GenSet full_set() const {
    return rank_ == 32 ? ~GenSet{0} : ((GenSet{1} << rank_) - 1);
  }

  // image of signed root r under generator s
  RootIndex gen_action(int s, int r) const { return gen_act_[s][r]; }

  RootIndex negate(RootIndex r) const {
    return r < nroots_ ? RootIndex(r + nroots_) : RootIndex(r - nroots_);
  }

  static std::vector<std::vector<int>> cartan_from_coxeter(
      const std::vector<std::vector<int>>& m);

private:
  friend class Element;

  CoxeterSystem(std::vector<std::string> labels,
                std::vector<std::vector<int>> cartan, BuildLimits limits);

  int rank_ = 0;
  int nroots_ = 0;  // N
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> cox_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> roots_;           // positive roots, simples first
  std::vector<std::vector<RootIndex>> gen_act_;   // per generator, size 2N
};

/* ------------------------------------------------------------------ */

class Element {
public:
  Element() : sys_(nullptr), len_(0) {}

  static Element identity(const CoxeterSystem& sys) {
    Element e;
    e.sys_ = &sys;
    e.perm_.resize(sys.num_positive_roots());
    for (int p = 0; p < sys.num_positive_roots(); ++p)
      e.perm_[p] = CoxeterSystem::RootIndex(p);
    e.len_ = 0;
    return e;
  }

  static Element generator(const CoxeterSystem& sys, int s) {
    Element e;
    e.sys_ = &sys;
    e.perm_.assign(sys.gen_act_[s].begin(),
                   sys.gen_act_[s].begin() + sys.num_positive_roots());
    e.len_ = 1;
    return e;
  }

  const CoxeterSystem& system() const { return *sys_; }
  int length() const { return len_; }
  bool is_identity() const { return len_ == 0; }

  // image of signed root r
  CoxeterSystem::RootIndex act(int r) const {
    int n = sys_->num_positive_roots();
    return r < n ? perm_[r] : sys_->negate(perm_[r - n]);
  }

  // equality via images of the simple roots; generators determine the element
  bool operator==(const Element& o) const {
    int k = sys_->rank();
    for (int s = 0; s < k; ++s)
      if (perm_[s] != o.perm_[s]) return false;
    return true;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }

  Element operator*(const Element& o) const {
    Element r;
    r.sys_ = sys_;
    int n = sys_->num_positive_roots();
    r.perm_.resize(n);
    for (int p = 0; p < n; ++p) r.perm_[p] = act(o.perm_[p]);
    r.recompute_length();
    return r;
  }

  Element inverse() const {
    int n = sys_->num_positive_roots();
    Element r;
    r.sys_ = sys_;
    r.perm_.resize(n);
    for (int p = 0; p < n; ++p) {
      CoxeterSystem::RootIndex img = perm_[p];
      if (img < n)
        r.perm_[img] = CoxeterSystem::RootIndex(p);
      else
        r.perm_[img - n] = CoxeterSystem::RootIndex(p + n);
    }
    r.len_ = len_;  // ℓ(w) = ℓ(w⁻¹)
    return r;
  }

  // w · s
  Element right_mul_gen(int s) const {
    Element r;
    r.sys_ = sys_;
    int n = sys_->num_positive_roots();
    r.perm_.resize(n);
    const auto& tbl = sys_->gen_act_[s];
    for (int p = 0; p < n; ++p) r.perm_[p] = act(tbl[p]);
    r.len_ = CoxeterSystem::RootIndex(perm_[s] < n ? len_ + 1 : len_ - 1);
    return r;
  }

  // s · w
  Element left_mul_gen(int s) const {
    Element r;
    r.sys_ = sys_;
    int n = sys_->num_positive_roots();
    r.perm_.resize(n);
    const auto& tbl = sys_->gen_act_[s];
    for (int p = 0; p < n; ++p) r.perm_[p] = tbl[perm_[p]];
    r.recompute_length();
    return r;
  }

  // s with ℓ(ws) < ℓ(w), as a bitset
  GenSet right_descents() const {
    GenSet d = 0;
    int n = sys_->num_positive_roots();
    for (int s = 0; s < sys_->rank(); ++s)
      if (perm_[s] >= n) d |= GenSet{1} << s;
    return d;
  }

  GenSet left_descents() const { return inverse().right_descents(); }

private:
  friend class DiagramAutomorphism;

  void recompute_length() {
    int n = sys_->num_positive_roots();
    int l = 0;
    for (int p = 0; p < n; ++p)
      if (perm_[p] >= n) ++l;
    len_ = CoxeterSystem::RootIndex(l);
  }

  const CoxeterSystem* sys_;
  std::vector<CoxeterSystem::RootIndex> perm_;  // images of the positive roots
  CoxeterSystem::RootIndex len_;
};

struct ElementHash {
  std::size_t operator()(const Element& w) const {
    std::size_t h = 1469598103934665603ull;
    int k = w.system().rank();
    for (int s = 0; s < k; ++s) {
      h ^= std::size_t(w.act(s));
      h *= 1099511628211ull;
    }
    return h;
  }
};

enum class Side { Left, Right };

inline Element apply_gen(int s, const Element& a, Side side) {
  return side == Side::Left ? a.left_mul_gen(s) : a.right_mul_gen(s);
}

inline GenSet left_descents(const Element& w) { return w.left_descents(); }
inline GenSet right_descents(const Element& w) { return w.right_descents(); }

// longest element of the standard parabolic W_I: greedy ascent inside W_I
inline Element longest_element(const CoxeterSystem& sys, GenSet I) {
  Element w = Element::identity(sys);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int s = 0; s < sys.rank(); ++s) {
      if (!(I >> s & 1)) continue;
      if (w.act(s) < sys.num_positive_roots()) {  // ℓ(ws) > ℓ(w)
        w = w.right_mul_gen(s);
        grew = true;
      }
    }
  }
  return w;
}

// reduced word obtained by repeatedly stripping the smallest-index left
// descent; deterministic representative used for output and ordering
inline std::vector<int> canonical_word(const Element& w) {
  std::vector<int> out;
  out.reserve(w.length());
  Element u = w.inverse();  // left descents of w = right descents of u
  int n = u.system().num_positive_roots();
  while (!u.is_identity()) {
    int s = 0;
    while (u.act(s) < n) ++s;
    out.push_back(s);
    u = u.right_mul_gen(s);
  }
  return out;
}

inline Element evaluate_word(const CoxeterSystem& sys, const std::vector<int>& word) {
  Element w = Element::identity(sys);
  for (int s : word) w = w.right_mul_gen(s);
  return w;
}

// letters appearing in a reduced word; independent of the word chosen
inline GenSet support(const Element& w) {
  GenSet out = 0;
  for (int s : canonical_word(w)) out |= GenSet{1} << s;
  return out;
}

// x is a prefix of w in the left weak order
inline bool is_prefix(const Element& x, const Element& w) {
  return x.length() + (x.inverse() * w).length() == w.length();
}

/* ------------------------------------------------------------------ */

/*
  Automorphism of (W,S) induced by a permutation of the generators that
  preserves the Coxeter matrix.  When the Cartan matrix is preserved as
  well, the action is realized as a permutation of signed roots and
  applying it costs one table composition; otherwise it falls back to
  mapping a reduced word letter by letter (this covers order-4/6 bonds
  whose arrow is reversed, where no root realization exists).
*/
class DiagramAutomorphism {
public:
  DiagramAutomorphism(const CoxeterSystem& sys, std::vector<int> sigma)
      : sys_(&sys), sigma_(std::move(sigma)) {
    int k = sys.rank();
    if (int(sigma_.size()) != k)
      throw std::invalid_argument("automorphism: wrong size");
    std::vector<bool> seen(k, false);
    for (int v : sigma_) {
      if (v < 0 || v >= k || seen[v])
        throw std::invalid_argument("automorphism: not a permutation");
      seen[v] = true;
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (sys.m(sigma_[i], sigma_[j]) != sys.m(i, j))
          throw std::invalid_argument(
              "automorphism: does not preserve the Coxeter matrix");

    // order of sigma
    order_ = 1;
    std::vector<int> pow = sigma_;
    auto is_id = [&](const std::vector<int>& p) {
      for (int i = 0; i < k; ++i)
        if (p[i] != i) return false;
      return true;
    };
    while (!is_id(pow)) {
      std::vector<int> nxt(k);
      for (int i = 0; i < k; ++i) nxt[i] = sigma_[pow[i]];
      pow = std::move(nxt);
      ++order_;
    }

    root_realized_ = true;
    for (int i = 0; i < k && root_realized_; ++i)
      for (int j = 0; j < k; ++j)
        if (sys.cartan_matrix()[sigma_[i]][sigma_[j]] != sys.cartan_matrix()[i][j]) {
          root_realized_ = false;
          break;
        }
    if (root_realized_) build_rho();
  }

  static DiagramAutomorphism identity(const CoxeterSystem& sys) {
    std::vector<int> sigma(sys.rank());
    for (int i = 0; i < sys.rank(); ++i) sigma[i] = i;
    return DiagramAutomorphism(sys, std::move(sigma));
  }

  const CoxeterSystem& system() const { return *sys_; }
  int map_gen(int s) const { return sigma_[s]; }
  const std::vector<int>& sigma() const { return sigma_; }
  int order() const { return order_; }
  bool is_identity() const { return order_ == 1; }

  Element apply(const Element& w) const {
    if (is_identity()) return w;
    if (root_realized_) {
      // F(w) = rho ∘ w ∘ rho⁻¹ on signed roots; rho preserves signs, so the
      // number of sign flips (= length) carries over
      Element r = Element::identity(*sys_);
      int n = sys_->num_positive_roots();
      for (int p = 0; p < n; ++p)
        r.perm_[p] = rho_[w.act(rho_inv_[p])];
      r.len_ = CoxeterSystem::RootIndex(w.length());
      return r;
    }
    std::vector<int> word = canonical_word(w);
    for (int& s : word) s = sigma_[s];
    return evaluate_word(*sys_, word);
  }

  GenSet closure(GenSet I) const {
    GenSet out = I;
    for (;;) {
      GenSet next = out;
      for (int s = 0; s < sys_->rank(); ++s)
        if (out >> s & 1) next |= GenSet{1} << sigma_[s];
      if (next == out) return out;
      out = next;
    }
  }

private:
  void build_rho() {
    int n = sys_->num_positive_roots();
    int k = sys_->rank();
    std::map<std::vector<int>, int> index;
    for (int p = 0; p < n; ++p) index[sys_->root(p)] = p;
    rho_.resize(2 * n);
    rho_inv_.resize(2 * n);
    for (int p = 0; p < n; ++p) {
      const std::vector<int>& c = sys_->root(p);
      std::vector<int> img(k, 0);
      for (int i = 0; i < k; ++i) img[sigma_[i]] = c[i];
      auto it = index.find(img);
      if (it == index.end())
        throw std::logic_error("automorphism: root image missing");
      rho_[p] = CoxeterSystem::RootIndex(it->second);
      rho_[p + n] = CoxeterSystem::RootIndex(it->second + n);
    }
    for (int r = 0; r < 2 * n; ++r) rho_inv_[rho_[r]] = CoxeterSystem::RootIndex(r);
  }

  const CoxeterSystem* sys_;
  std::vector<int> sigma_;
  int order_ = 1;
  bool root_realized_ = false;
  std::vector<CoxeterSystem::RootIndex> rho_, rho_inv_;
};

inline Element apply_automorphism(const DiagramAutomorphism& F, const Element& w) {
  return F.apply(w);
}

inline GenSet f_closure(const DiagramAutomorphism& F, GenSet I) {
  return F.closure(I);
}

/* ------------------------------------------------------------------ */
/* construction */

inline std::vector<std::vector<int>> CoxeterSystem::cartan_from_coxeter(
    const std::vector<std::vector<int>>& m) {
  int k = int(m.size());
  for (const auto& row : m)
    if (int(row.size()) != k)
      throw std::invalid_argument("Coxeter matrix must be square");
  std::vector<std::vector<int>> cartan(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i) {
    if (m[i][i] != 1)
      throw NonCrystallographic("Coxeter matrix: diagonal entries must be 1");
    cartan[i][i] = 2;
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (m[i][j] != m[j][i])
        throw std::invalid_argument("Coxeter matrix must be symmetric");
      int mij = m[i][j];
      // first-listed generator of a 4- or 6-bond carries the -2/-3 entry;
      // the group does not depend on this orientation
      switch (mij) {
        case 2: break;
        case 3: cartan[i][j] = cartan[j][i] = -1; break;
        case 4: cartan[i][j] = -2; cartan[j][i] = -1; break;
        case 6: cartan[i][j] = -3; cartan[j][i] = -1; break;
        default:
          throw NonCrystallographic(
              "bond order " + std::to_string(mij) +
              " is not crystallographic (allowed: 2, 3, 4, 6)");
      }
    }
  return cartan;
}

inline CoxeterSystem::CoxeterSystem(std::vector<std::string> labels,
                                    std::vector<std::vector<int>> cartan,
                                    BuildLimits limits)
    : labels_(std::move(labels)), cartan_(std::move(cartan)) {
  rank_ = int(labels_.size());
  if (rank_ > kMaxRank)
    throw std::invalid_argument("rank exceeds the supported maximum of 32");
  if (int(cartan_.size()) != rank_)
    throw std::invalid_argument("Cartan matrix size does not match labels");
  for (const auto& row : cartan_)
    if (int(row.size()) != rank_)
      throw std::invalid_argument("Cartan matrix must be square");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      if (i == j) {
        if (cartan_[i][j] != 2)
          throw std::invalid_argument("Cartan matrix: diagonal must be 2");
      } else {
        if (cartan_[i][j] > 0)
          throw std::invalid_argument("Cartan matrix: off-diagonal must be <= 0");
        if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
          throw std::invalid_argument("Cartan matrix: zero pattern must be symmetric");
      }
    }
  for (int i = 0; i < rank_; ++i) {
    if (labels_[i].empty())
      throw std::invalid_argument("generator labels must be nonempty");
    for (int j = i + 1; j < rank_; ++j)
      if (labels_[i] == labels_[j])
        throw std::invalid_argument("generator labels must be distinct");
  }

  // Coxeter matrix from products a_ij a_ji
  cox_.assign(rank_, std::vector<int>(rank_, 2));
  for (int i = 0; i < rank_; ++i) {
    cox_[i][i] = 1;
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      int prod = cartan_[i][j] * cartan_[j][i];
      switch (prod) {
        case 0: cox_[i][j] = 2; break;
        case 1: cox_[i][j] = 3; break;
        case 2: cox_[i][j] = 4; break;
        case 3: cox_[i][j] = 6; break;
        default:
          // a_ij * a_ji >= 4 is an affine or hyperbolic bond, m = infinity
          throw NonFiniteType("Cartan matrix: a_ij*a_ji = " + std::to_string(prod) +
                              " gives a bond of infinite order");
      }
    }
  }

  // positive roots by orbit closure, simple roots first
  std::map<std::vector<int>, int> index;
  auto reflect = [&](int s, const std::vector<int>& v) {
    std::vector<int> u = v;
    long acc = 0;
    for (int j = 0; j < rank_; ++j) acc += long(cartan_[s][j]) * v[j];
    u[s] = int(u[s] - acc);
    return u;
  };
  for (int s = 0; s < rank_; ++s) {
    std::vector<int> e(rank_, 0);
    e[s] = 1;
    roots_.push_back(e);
    index[e] = s;
  }
  for (std::size_t head = 0; head < roots_.size(); ++head) {
    std::vector<int> v = roots_[head];  // copy: roots_ may reallocate
    for (int s = 0; s < rank_; ++s) {
      std::vector<int> u = reflect(s, v);
      bool nonneg = std::all_of(u.begin(), u.end(), [](int c) { return c >= 0; });
      if (!nonneg) continue;  // only -alpha_s arises, already covered
      if (index.find(u) == index.end()) {
        if (int(roots_.size()) >= limits.max_positive_roots)
          throw NonFiniteType(
              "root closure exceeded " + std::to_string(limits.max_positive_roots) +
              " positive roots; the type is not finite (or raise the cap)");
        index[u] = int(roots_.size());
        roots_.push_back(std::move(u));
      }
    }
  }
  nroots_ = int(roots_.size());
  if (nroots_ > 32000)
    throw NonFiniteType("root system too large for 16-bit indices");

  gen_act_.assign(rank_, std::vector<RootIndex>(2 * nroots_));
  for (int s = 0; s < rank_; ++s) {
    for (int p = 0; p < nroots_; ++p) {
      std::vector<int> u = reflect(s, roots_[p]);
      bool nonneg = std::all_of(u.begin(), u.end(), [](int c) { return c >= 0; });
      RootIndex img;
      if (nonneg) {
        img = RootIndex(index.at(u));
      } else {
        for (int& c : u) c = -c;
        img = RootIndex(index.at(u) + nroots_);
      }
      gen_act_[s][p] = img;
      gen_act_[s][p + nroots_] = negate(img);
    }
  }
}

/* built-in catalog */

inline CoxeterSystem CoxeterSystem::from_type(const std::string& name,
                                              BuildLimits limits) {
  auto bad = [&]() { throw std::invalid_argument("unknown type name: " + name); };
  if (name.size() < 2) bad();
  char fam = name[0];
  int n = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') bad();
    n = n * 10 + (name[i] - '0');
  }

  auto chain_labels = [&](int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back("s" + std::to_string(i));
    return out;
  };
  auto simply_laced = [&](int count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> c(count, std::vector<int>(count, 0));
    for (int i = 0; i < count; ++i) c[i][i] = 2;
    for (auto [a, b] : edges) c[a][b] = c[b][a] = -1;
    return c;
  };

  switch (fam) {
    case 'A': {
      if (n < 1 || n > 7) bad();
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      return CoxeterSystem(chain_labels(n), simply_laced(n, edges), limits);
    }
    case 'B':
    case 'C': {
      if (fam == 'B' && (n < 2 || n > 5)) bad();
      if (fam == 'C' && (n < 3 || n > 5)) bad();
      if (fam == 'B' && n == 5) {
        // chain t - s1 - s2 - s3 - s4 with the 4-bond at t--s1 (t short)
        std::vector<std::string> labels = {"t", "s1", "s2", "s3", "s4"};
        std::vector<std::vector<int>> c(5, std::vector<int>(5, 0));
        for (int i = 0; i < 5; ++i) c[i][i] = 2;
        c[0][1] = -2; c[1][0] = -1;
        for (int i = 1; i + 1 < 5; ++i) { c[i][i + 1] = -1; c[i + 1][i] = -1; }
        return CoxeterSystem(std::move(labels), std::move(c), limits);
      }
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1});
      auto c = simply_laced(n, edges);
      if (fam == 'B') { c[n - 1][n - 2] = -2; c[n - 2][n - 1] = -1; }
      else           { c[n - 2][n - 1] = -2; c[n - 1][n - 2] = -1; }
      return CoxeterSystem(chain_labels(n), std::move(c), limits);
    }
    case 'D': {
      if (n < 4 || n > 6) bad();
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1});
      edges.push_back({n - 3, n - 1});
      return CoxeterSystem(chain_labels(n), simply_laced(n, edges), limits);
    }
    case 'E': {
      if (n != 6) bad();
      std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}};
      return CoxeterSystem(chain_labels(6), simply_laced(6, edges), limits);
    }
    case 'F': {
      if (n != 4) bad();
      std::vector<std::vector<int>> c = {{2, -1, 0, 0},
                                         {-1, 2, -1, 0},
                                         {0, -2, 2, -1},
                                         {0, 0, -1, 2}};
      return CoxeterSystem(chain_labels(4), std::move(c), limits);
    }
    case 'G': {
      if (n != 2) bad();
      std::vector<std::vector<int>> c = {{2, -1}, {-3, 2}};
      return CoxeterSystem(chain_labels(2), std::move(c), limits);
    }
    default: bad();
  }
  throw std::invalid_argument("unknown type name: " + name);  // unreachable
}

}  // namespace dlaff

#endif
