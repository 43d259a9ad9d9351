/*
  format.hpp

  Serialization and parsing for the command line layer: canonical words as
  label arrays, verdicts and class atlases as JSON, cyclic-shift graphs as
  DOT.  All emission goes through ordered containers and pre-sorted
  vectors, so output bytes are a pure function of the input.
*/

#ifndef DLAFF_FORMAT_HPP
#define DLAFF_FORMAT_HPP

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dlaff/affineness.hpp"
#include "dlaff/braid.hpp"
#include "dlaff/classes.hpp"
#include "dlaff/coxeter.hpp"

namespace dlaff {

using ordered_json = nlohmann::ordered_json;

/* parsing ---------------------------------------------------------- */

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// comma-separated generator labels, evaluated left to right; "e" or the
// empty string denote the identity
inline Element parse_word(const CoxeterSystem& sys, const std::string& text) {
  std::vector<std::string> labs = split(text, ',');
  if (labs.size() == 1 && (labs.front().empty() || labs.front() == "e"))
    return Element::identity(sys);
  Element w = Element::identity(sys);
  for (const std::string& lab : labs) {
    if (lab.empty()) throw std::invalid_argument("word: empty label");
    auto s = sys.index_of_label(lab);
    if (!s) throw std::invalid_argument("word: unknown generator label '" + lab + "'");
    w = w.right_mul_gen(*s);
  }
  return w;
}

// automorphism as label pairs "a:b,c:d"; unmentioned labels stay fixed
inline DiagramAutomorphism parse_automorphism(const CoxeterSystem& sys,
                                              const std::string& text) {
  std::vector<int> sigma(std::size_t(sys.rank()));
  for (int i = 0; i < sys.rank(); ++i) sigma[std::size_t(i)] = i;
  if (!text.empty()) {
    for (const std::string& pair : split(text, ',')) {
      auto colon = pair.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("automorphism: expected 'from:to', got '" +
                                    pair + "'");
      auto from = sys.index_of_label(pair.substr(0, colon));
      auto to = sys.index_of_label(pair.substr(colon + 1));
      if (!from || !to)
        throw std::invalid_argument("automorphism: unknown label in '" + pair + "'");
      sigma[std::size_t(*from)] = *to;
    }
  }
  return DiagramAutomorphism(sys, std::move(sigma));  // validates
}

// matrix description: {"labels": [...], "cartan": [[...]]} or
// {"labels": [...], "coxeter": [[...]]}
inline CoxeterSystem system_from_json(const ordered_json& j, BuildLimits limits = {}) {
  if (!j.is_object() || !j.contains("labels"))
    throw std::invalid_argument("matrix file: expected an object with 'labels'");
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  bool has_cartan = j.contains("cartan");
  bool has_cox = j.contains("coxeter");
  if (has_cartan == has_cox)
    throw std::invalid_argument(
        "matrix file: provide exactly one of 'cartan' or 'coxeter'");
  auto matrix = (has_cartan ? j.at("cartan") : j.at("coxeter"))
                    .get<std::vector<std::vector<int>>>();
  return has_cartan
             ? CoxeterSystem::from_cartan(std::move(labels), std::move(matrix), limits)
             : CoxeterSystem::from_coxeter_matrix(std::move(labels), matrix, limits);
}

/* words and sets --------------------------------------------------- */

inline ordered_json word_json(const Element& w) {
  ordered_json arr = ordered_json::array();
  for (int s : canonical_word(w)) arr.push_back(w.system().label(s));
  return arr;
}

inline std::string word_text(const Element& w) {
  std::vector<int> word = canonical_word(w);
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += w.system().label(word[i]);
  }
  return out;
}

inline ordered_json genset_json(const CoxeterSystem& sys, GenSet I) {
  ordered_json arr = ordered_json::array();
  for (int s = 0; s < sys.rank(); ++s)
    if (I >> s & 1) arr.push_back(sys.label(s));
  return arr;
}

inline ordered_json braid_json(const CoxeterSystem& sys,
                               const std::vector<Element>& factors) {
  (void)sys;
  ordered_json arr = ordered_json::array();
  for (const Element& f : factors) arr.push_back(word_json(f));
  return arr;
}

/* verdicts --------------------------------------------------------- */

inline const char* reason_name(ReasonKind r) {
  switch (r) {
    case ReasonKind::BraidDivisibility: return "braid_divisibility";
    case ReasonKind::FullTwist: return "full_twist";
    case ReasonKind::MinimalLength: return "minimal_length";
    case ReasonKind::CyclicShiftTransfer: return "cyclic_shift_transfer";
  }
  return "unknown";
}

inline ordered_json verdict_json(const Element& w, const Verdict& v) {
  const CoxeterSystem& sys = w.system();
  ordered_json j;
  j["word"] = word_json(w);
  j["length"] = w.length();
  j["status"] = v.established() ? "affine_established" : "inconclusive";
  if (v.established()) {
    j["reason"] = reason_name(v.reason);
    if (v.reason == ReasonKind::CyclicShiftTransfer) {
      j["inner_reason"] = reason_name(v.inner_reason);
      ordered_json path = ordered_json::array();
      for (const Element& p : v.path) path.push_back(word_json(p));
      j["path"] = std::move(path);
    }
    if (v.reason != ReasonKind::MinimalLength) j["d"] = v.d;
    if (v.has_witness) j["witness"] = braid_json(sys, v.witness_factors);
  }
  j["reduced_support"] = genset_json(sys, v.reduced_support);
  if (v.attempted_d_max > 0) j["attempted_d_max"] = v.attempted_d_max;
  return j;
}

/* class atlas ------------------------------------------------------ */

inline ordered_json class_json(const FConjugacyClass& cls,
                               const DiagramAutomorphism& F,
                               bool with_verdicts = true) {
  const CoxeterSystem& sys = cls.representative().system();
  ordered_json j;
  j["representative"] = word_json(cls.representative());
  j["size"] = cls.size();
  j["min_length"] = cls.min_length();
  j["d"] = cls.d();
  ordered_json cmin = ordered_json::array();
  for (const Element& x : cls.c_min()) cmin.push_back(word_json(x));
  j["c_min"] = std::move(cmin);

  auto good = find_good(cls, F);
  if (good) {
    ordered_json g;
    g["element"] = word_json(good->elt);
    ordered_json chain = ordered_json::array();
    for (GenSet I : good->chain.sets) chain.push_back(genset_json(sys, I));
    g["chain"] = std::move(chain);
    j["good"] = std::move(g);
  } else {
    j["good"] = nullptr;  // expected for no class; a null here is a bug upstream
  }

  if (with_verdicts) {
    ordered_json verdicts = ordered_json::array();
    for (const Element& x : cls.c_min())
      verdicts.push_back(verdict_json(x, certify(x, F)));
    j["c_min_verdicts"] = std::move(verdicts);
  }
  return j;
}

/* cyclic-shift graph ----------------------------------------------- */

// undirected graph on the class members; edges are elementary shifts,
// self-loops suppressed, minimal-length nodes marked
inline std::string graph_dot(const FConjugacyClass& cls,
                             const DiagramAutomorphism& F) {
  std::ostringstream out;
  out << "graph cyclic_shifts {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const Element& w : cls.members()) {
    out << "  \"" << word_text(w) << "\"";
    if (w.length() == cls.min_length()) out << " [style=filled, fillcolor=lightgrey]";
    out << ";\n";
  }
  std::set<std::pair<std::string, std::string>> edges;
  for (const Element& w : cls.members()) {
    std::string a = word_text(w);
    for (const Element& z : cyclic_neighbors(w, F)) {
      if (z == w) continue;
      std::string b = word_text(z);
      edges.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
  }
  for (const auto& [a, b] : edges)
    out << "  \"" << a << "\" -- \"" << b << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace dlaff

#endif
