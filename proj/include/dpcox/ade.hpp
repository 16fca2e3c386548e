#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace dpcox {

// One irreducible component: letter in {A, D, E} and its rank.
struct AdeComponent {
  char letter = 'A';
  int rank = 1;
  friend bool operator==(const AdeComponent&, const AdeComponent&) = default;
};

// Multiset of components, kept in canonical order (E before D before A, larger rank first).
class Ade {
 public:
  Ade() = default;
  explicit Ade(std::vector<AdeComponent> comps) : comps_(std::move(comps)) { normalize(); }

  const std::vector<AdeComponent>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  int rank() const {
    int s = 0;
    for (auto& c : comps_) s += c.rank;
    return s;
  }
  // number of roots of the root system
  int root_count() const {
    int s = 0;
    for (auto& c : comps_) {
      int n = c.rank;
      if (c.letter == 'A') s += n * (n + 1);
      else if (c.letter == 'D') s += 2 * n * (n - 1);
      else s += (n == 6 ? 72 : n == 7 ? 126 : 240);
    }
    return s;
  }

  // "A3+2A1", "-" for the empty system
  std::string str() const {
    if (comps_.empty()) return "-";
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < comps_.size()) {
      size_t j = i;
      while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
      if (!first) os << "+";
      if (j - i > 1) os << (j - i);
      os << comps_[i].letter << comps_[i].rank;
      first = false;
      i = j;
    }
    return os.str();
  }

  static Ade parse(const std::string& s) {
    std::vector<AdeComponent> comps;
    if (s == "-" || s.empty()) return Ade{};
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
      size_t p = 0;
      int mult = 1;
      if (p < part.size() && std::isdigit(static_cast<unsigned char>(part[p]))) {
        mult = 0;
        while (p < part.size() && std::isdigit(static_cast<unsigned char>(part[p])))
          mult = mult * 10 + (part[p++] - '0');
      }
      if (p >= part.size()) throw std::invalid_argument("bad ADE label: " + s);
      char letter = part[p++];
      if (letter != 'A' && letter != 'D' && letter != 'E')
        throw std::invalid_argument("bad ADE label: " + s);
      if (p < part.size() && part[p] == '_') ++p;
      if (p >= part.size()) throw std::invalid_argument("bad ADE label: " + s);
      int rank = std::stoi(part.substr(p));
      if ((letter == 'D' && rank < 4) || (letter == 'E' && (rank < 6 || rank > 8)) || rank < 1)
        throw std::invalid_argument("bad ADE label: " + s);
      for (int k = 0; k < mult; ++k) comps.push_back({letter, rank});
    }
    return Ade(std::move(comps));
  }

  friend bool operator==(const Ade& a, const Ade& b) { return a.comps_ == b.comps_; }
  friend bool operator<(const Ade& a, const Ade& b) { return a.str() < b.str(); }

 private:
  static int letter_order(char c) { return c == 'E' ? 0 : c == 'D' ? 1 : 2; }
  void normalize() {
    std::sort(comps_.begin(), comps_.end(), [](const AdeComponent& a, const AdeComponent& b) {
      if (letter_order(a.letter) != letter_order(b.letter))
        return letter_order(a.letter) < letter_order(b.letter);
      return a.rank > b.rank;
    });
  }
  std::vector<AdeComponent> comps_;
};

// Identify the Dynkin type of a set of roots whose pairwise intersections lie in {0,1}.
// Returns nullopt if the graph is not a disjoint union of A/D/E diagrams.
inline std::optional<Ade> identify_ade(const std::vector<std::vector<Coeff>>& gram) {
  const int n = static_cast<int>(gram.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    if (gram[i][i] != -2) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (gram[i][j] == 1) adj[i].push_back(j);
      else if (gram[i][j] != 0) return std::nullopt;
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<AdeComponent> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> verts{s};
    comp[s] = s;
    for (size_t k = 0; k < verts.size(); ++k)
      for (int w : adj[verts[k]])
        if (comp[w] == -1) {
          comp[w] = s;
          verts.push_back(w);
        }
    const int m = static_cast<int>(verts.size());
    int edges = 0;
    for (int v : verts) edges += static_cast<int>(adj[v].size());
    edges /= 2;
    if (edges != m - 1) return std::nullopt;  // not a tree
    std::vector<int> branch;
    for (int v : verts) {
      if (adj[v].size() > 3) return std::nullopt;
      if (adj[v].size() == 3) branch.push_back(v);
    }
    if (branch.empty()) {
      out.push_back({'A', m});
      continue;
    }
    if (branch.size() > 1) return std::nullopt;
    // arm lengths from the branch vertex
    std::vector<int> arms;
    for (int start : adj[branch[0]]) {
      int len = 1, prev = branch[0], cur = start;
      while (adj[cur].size() == 2) {
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) out.push_back({'D', m});
    else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) out.push_back({'E', m});
    else return std::nullopt;
  }
  return Ade(std::move(out));
}

inline std::vector<std::vector<Coeff>> gram_matrix(const std::vector<DivisorClass>& v) {
  std::vector<std::vector<Coeff>> g(v.size(), std::vector<Coeff>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) g[i][j] = intersect(v[i], v[j]);
  return g;
}

inline std::optional<Ade> identify_ade(const std::vector<DivisorClass>& simple_roots) {
  return identify_ade(gram_matrix(simple_roots));
}

}  // namespace dpcox
