#pragma once

// Quivers, paths and bound quiver presentations.
//
// Composition is written left to right throughout: a path p from i to j
// satisfies p = e_i p e_j, and pq means "traverse p, then q". All vertex
// numbering is 1-based; arrows are identified by unique names.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qha/errors.hpp"
#include "qha/scalar.hpp"

namespace qha {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow& a, const Arrow& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target;
  }
};

struct Quiver {
  int num_vertices = 0;
  std::vector<Arrow> arrows;

  void validate() const {
    if (num_vertices < 1) throw InputError("quiver needs at least one vertex");
    std::vector<std::string> names;
    for (const Arrow& a : arrows) {
      if (a.name.empty()) throw InputError("arrow with empty name");
      if (a.source < 1 || a.source > num_vertices || a.target < 1 || a.target > num_vertices)
        throw InputError("arrow '" + a.name + "' has endpoints outside 1.." +
                         std::to_string(num_vertices));
      names.push_back(a.name);
    }
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      throw InputError("duplicate arrow name");
  }

  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    throw InputError("unknown arrow '" + name + "'");
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.num_vertices == b.num_vertices && a.arrows == b.arrows;
  }
};

// A path is a start vertex plus a composable list of arrow indices; the empty
// list is the trivial path e_source.
struct Path {
  int source = 0;
  std::vector<int> arrows;

  static Path trivial(int vertex) { return Path{vertex, {}}; }
  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }

  // Walks the arrows, checking composability; returns the end vertex.
  int target(const Quiver& q) const {
    int at = source;
    for (int a : arrows) {
      if (a < 0 || a >= static_cast<int>(q.arrows.size()))
        throw InputError("path uses an arrow index out of range");
      if (q.arrows[a].source != at) throw InputError("path is not composable");
      at = q.arrows[a].target;
    }
    return at;
  }

  friend Path operator*(const Path& p, const Path& q) {
    Path r = p;
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
  }

  Path reversed(const Quiver& q) const {
    Path r;
    r.source = target(q);
    r.arrows.assign(arrows.rbegin(), arrows.rend());
    return r;
  }

  std::string to_string(const Quiver& q) const {
    if (is_trivial()) return "e" + std::to_string(source);
    std::string s;
    for (int a : arrows) s += (s.empty() ? "" : "*") + q.arrows[a].name;
    return s;
  }

  friend bool operator==(const Path& a, const Path& b) {
    return a.source == b.source && a.arrows == b.arrows;
  }
};

// Degree-lexicographic path order: by length, then arrow names, then source.
// `rank` maps arrow indices to their rank in name order.
inline bool deglex_less(const Path& a, const Path& b, const std::vector<int>& rank) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i)
    if (rank[a.arrows[i]] != rank[b.arrows[i]]) return rank[a.arrows[i]] < rank[b.arrows[i]];
  return a.source < b.source;
}

template <class K>
struct RelationTerm {
  K coeff{};
  Path path;
  friend bool operator==(const RelationTerm& a, const RelationTerm& b) {
    return a.coeff == b.coeff && a.path == b.path;
  }
};

// A k-combination of parallel paths of length >= 2.
template <class K>
struct Relation {
  std::vector<RelationTerm<K>> terms;
  friend bool operator==(const Relation& a, const Relation& b) { return a.terms == b.terms; }
};

template <class K>
struct Presentation {
  Quiver quiver;
  std::vector<Relation<K>> relations;
  K proto{};  // pins the coefficient field

  // Checks well-formedness and drops zero-coefficient terms in place.
  void validate() {
    quiver.validate();
    for (auto& rel : relations) {
      auto& t = rel.terms;
      t.erase(std::remove_if(t.begin(), t.end(),
                             [](const RelationTerm<K>& x) { return qha::is_zero(x.coeff); }),
              t.end());
      if (t.empty()) throw InputError("relation with no nonzero terms");
      int src = t.front().path.source;
      int tgt = t.front().path.target(quiver);
      for (const auto& term : t) {
        if (term.path.length() < 2)
          throw InputError("relation term '" + term.path.to_string(quiver) +
                           "' is shorter than two arrows");
        if (term.path.source != src || term.path.target(quiver) != tgt)
          throw InputError("relation terms are not parallel");
      }
    }
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.quiver == b.quiver && a.relations == b.relations;
  }
};

}  // namespace qha
