#include "stendo/quiver.hpp"

#include <algorithm>
#include <map>

namespace stendo {

namespace {

struct Path {
  int vertex;              // used when arrows is empty
  std::vector<int> arrows; // composition order: last entry applied first

  int length() const { return static_cast<int>(arrows.size()); }
};

int path_src(const Path& p, const QuiverPresentation& Q) {
  return p.arrows.empty() ? p.vertex : Q.arrows[p.arrows.back()].source;
}
int path_dst(const Path& p, const QuiverPresentation& Q) {
  return p.arrows.empty() ? p.vertex : Q.arrows[p.arrows.front()].target;
}

std::string path_label(const Path& p, const QuiverPresentation& Q) {
  if (p.arrows.empty()) return "e_" + Q.vertices[p.vertex];
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += Q.arrows[p.arrows[i]].name;
  }
  return s;
}

struct RelTerm {
  uint32_t coeff;
  std::vector<int> arrows;
};

// Parses "2*b*a - a*b" style relation strings over the arrow names.
std::vector<RelTerm> parse_relation(const Fp& F, const QuiverPresentation& Q,
                                    const std::string& s) {
  std::map<std::string, int> arrow_of;
  for (size_t i = 0; i < Q.arrows.size(); ++i) arrow_of[Q.arrows[i].name] = static_cast<int>(i);
  std::vector<RelTerm> terms;
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  bool neg = false;
  skip();
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  while (true) {
    skip();
    uint32_t coeff = 1 % F.p();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      uint64_t v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        v = v * 10 + (s[i++] - '0');
      coeff = static_cast<uint32_t>(v % F.p());
    }
    std::vector<int> arrows;
    while (true) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip();
      }
      size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      if (start == i) break;
      std::string name = s.substr(start, i - start);
      auto it = arrow_of.find(name);
      if (it == arrow_of.end()) throw InputError("unknown arrow '" + name + "' in relation");
      arrows.push_back(it->second);
    }
    if (arrows.empty()) throw InputError("empty term in relation '" + s + "'");
    terms.push_back({neg ? F.neg(coeff) : coeff, arrows});
    skip();
    if (i >= s.size()) break;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else {
      throw InputError("malformed relation '" + s + "'");
    }
  }
  return terms;
}

}  // namespace

FDAlgebra algebra_from_quiver(Fp F, const QuiverPresentation& Q) {
  if (Q.vertices.empty()) throw InputError("quiver needs at least one vertex");
  if (Q.nilpotency_bound < 1) throw InputError("nilpotency bound must be positive");
  for (const auto& a : Q.arrows) {
    if (a.source < 0 || a.source >= static_cast<int>(Q.vertices.size()) || a.target < 0 ||
        a.target >= static_cast<int>(Q.vertices.size()))
      throw InputError("arrow endpoint out of range");
  }
  const int N = Q.nilpotency_bound;

  // validate relations
  std::vector<std::vector<RelTerm>> rels;
  for (const auto& rs : Q.relations) {
    auto terms = parse_relation(F, Q, rs);
    for (const auto& t : terms) {
      if (t.arrows.size() < 2)
        throw InputError("non-admissible relation (term of length < 2): " + rs);
      // consecutive composability: entry k applied after entry k+1
      for (size_t k = 0; k + 1 < t.arrows.size(); ++k)
        if (Q.arrows[t.arrows[k]].source != Q.arrows[t.arrows[k + 1]].target)
          throw InputError("non-composable path in relation: " + rs);
    }
    for (size_t k = 1; k < terms.size(); ++k) {
      Path p0{0, terms[0].arrows}, pk{0, terms[k].arrows};
      if (path_src(p0, Q) != path_src(pk, Q) || path_dst(p0, Q) != path_dst(pk, Q))
        throw InputError("relation terms not parallel: " + rs);
    }
    rels.push_back(std::move(terms));
  }

  // enumerate paths of length 0..N
  std::vector<Path> paths;
  std::map<std::pair<int, std::vector<int>>, int> index_of;
  auto add_path = [&](const Path& p) {
    auto key = std::make_pair(p.arrows.empty() ? p.vertex : -1, p.arrows);
    if (index_of.count(key)) return;
    index_of[key] = static_cast<int>(paths.size());
    paths.push_back(p);
    if (paths.size() > 40000) throw Inconclusive("path enumeration exceeded budget");
  };
  for (int v = 0; v < static_cast<int>(Q.vertices.size()); ++v) add_path({v, {}});
  std::vector<std::vector<int>> by_length(N + 1);
  for (int v = 0; v < static_cast<int>(Q.vertices.size()); ++v) by_length[0].push_back(v);
  for (int len = 1; len <= N; ++len) {
    for (int pid : by_length[len - 1]) {
      Path p = paths[pid];
      for (size_t ai = 0; ai < Q.arrows.size(); ++ai) {
        if (Q.arrows[ai].source != path_dst(p, Q)) continue;
        Path np{p.vertex, {}};
        np.arrows.push_back(static_cast<int>(ai));
        np.arrows.insert(np.arrows.end(), p.arrows.begin(), p.arrows.end());
        add_path(np);
        by_length[len].push_back(index_of[{-1, np.arrows}]);
      }
    }
  }
  const int P = static_cast<int>(paths.size());

  // coordinate order: longer paths first so that surviving (non-pivot)
  // coordinates are the shortest representatives
  std::vector<int> order(P);
  for (int i = 0; i < P; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (paths[a].length() != paths[b].length()) return paths[a].length() > paths[b].length();
    if (paths[a].arrows != paths[b].arrows) return paths[a].arrows < paths[b].arrows;
    return paths[a].vertex < paths[b].vertex;
  });
  std::vector<int> coord_of(P);
  for (int c = 0; c < P; ++c) coord_of[order[c]] = c;

  // ideal subspace U spanned by truncated u * r * v
  RowSpace U(F, P);
  auto compose = [&](const std::vector<int>& left, const std::vector<int>& mid,
                     const std::vector<int>& right) {
    std::vector<int> out = left;
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), right.begin(), right.end());
    return out;
  };
  for (const auto& rel : rels) {
    int rs = path_src(Path{0, rel[0].arrows}, Q);
    int rd = path_dst(Path{0, rel[0].arrows}, Q);
    for (int u = 0; u < P; ++u) {
      if (path_src(paths[u], Q) != rd) continue;
      for (int v = 0; v < P; ++v) {
        if (path_dst(paths[v], Q) != rs) continue;
        std::vector<uint32_t> row(P, 0);
        bool nonzero = false;
        for (const auto& t : rel) {
          int len = paths[u].length() + static_cast<int>(t.arrows.size()) + paths[v].length();
          if (len > N) continue;
          auto word = compose(paths[u].arrows, t.arrows, paths[v].arrows);
          auto it = index_of.find({-1, word});
          STENDO_ASSERT(it != index_of.end(), "composite path missing from enumeration");
          row[coord_of[it->second]] = F.add(row[coord_of[it->second]], t.coeff);
          nonzero = true;
        }
        if (nonzero) U.add(row);
      }
    }
  }

  // the nilpotency bound must hold: every path of length N lies in U
  for (int pid : by_length[N]) {
    std::vector<uint32_t> row(P, 0);
    row[coord_of[pid]] = 1;
    if (!U.contains(row))
      throw Inconclusive("path space does not vanish at the nilpotency bound");
  }

  // surviving paths = non-pivot coordinates
  std::vector<bool> pivot(P, false);
  Matrix UB = U.basis_matrix();
  for (int i = 0; i < UB.rows(); ++i)
    for (int c = 0; c < P; ++c)
      if (UB.at(i, c)) {
        pivot[c] = true;
        break;
      }
  std::vector<int> basis_paths;  // path ids
  for (int c = 0; c < P; ++c)
    if (!pivot[c]) basis_paths.push_back(order[c]);
  std::sort(basis_paths.begin(), basis_paths.end(), [&](int a, int b) {
    if (paths[a].length() != paths[b].length()) return paths[a].length() < paths[b].length();
    if (paths[a].arrows != paths[b].arrows) return paths[a].arrows < paths[b].arrows;
    return paths[a].vertex < paths[b].vertex;
  });
  int dim = static_cast<int>(basis_paths.size());
  std::vector<int> basis_index(P, -1);
  for (int i = 0; i < dim; ++i) basis_index[basis_paths[i]] = i;

  // class of a path id in basis coordinates
  auto class_of = [&](int pid) {
    std::vector<uint32_t> row(P, 0);
    row[coord_of[pid]] = 1;
    auto r = U.reduce(row);
    std::vector<uint32_t> out(dim, 0);
    for (int c = 0; c < P; ++c)
      if (r[c]) {
        int b = basis_index[order[c]];
        STENDO_ASSERT(b >= 0, "residue supported on pivot coordinate");
        out[b] = r[c];
      }
    return out;
  };

  std::vector<std::vector<std::vector<uint32_t>>> table(
      dim, std::vector<std::vector<uint32_t>>(dim));
  std::vector<std::string> labels;
  for (int i = 0; i < dim; ++i) labels.push_back(path_label(paths[basis_paths[i]], Q));
  for (int i = 0; i < dim; ++i) {
    const Path& pi = paths[basis_paths[i]];
    for (int j = 0; j < dim; ++j) {
      const Path& pj = paths[basis_paths[j]];
      std::vector<uint32_t> out(dim, 0);
      // product p_i * p_j = p_i after p_j, defined when dst(p_j) = src(p_i)
      if (path_dst(pj, Q) == path_src(pi, Q)) {
        int len = pi.length() + pj.length();
        if (len <= N) {
          if (len == 0) {
            out = class_of(basis_paths[i]);  // trivial * trivial at same vertex
          } else {
            auto word = compose(pi.arrows, pj.arrows, {});
            auto it = index_of.find({-1, word});
            STENDO_ASSERT(it != index_of.end(), "product path missing");
            out = class_of(it->second);
          }
        }
        // len > N: zero in the quotient
      }
      table[i][j] = std::move(out);
    }
  }
  std::vector<uint32_t> unit(dim, 0);
  std::vector<std::vector<uint32_t>> idempotents;
  std::vector<int> idem_block;
  std::vector<std::vector<uint32_t>> radical;
  for (int i = 0; i < dim; ++i) {
    const Path& p = paths[basis_paths[i]];
    if (p.length() == 0) {
      unit[i] = 1;
      std::vector<uint32_t> e(dim, 0);
      e[i] = 1;
      idempotents.push_back(std::move(e));
      idem_block.push_back(static_cast<int>(idem_block.size()));
    } else {
      std::vector<uint32_t> r(dim, 0);
      r[i] = 1;
      radical.push_back(std::move(r));
    }
  }

  FDAlgebra A(F, std::move(table), std::move(unit), std::move(labels));
  FDAlgebra::Structure st;
  st.radical_basis = std::move(radical);
  st.idempotents = std::move(idempotents);
  st.idempotent_block = std::move(idem_block);
  st.num_blocks = static_cast<int>(st.idempotents.size());
  A.set_structure(std::move(st));
  return A;
}

QuiverPresentation preprojective_a2() {
  QuiverPresentation Q;
  Q.vertices = {"1", "2"};
  Q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
  Q.relations = {"b*a", "a*b"};
  Q.nilpotency_bound = 2;
  return Q;
}

QuiverPresentation loop_with_nilpotency(int n) {
  QuiverPresentation Q;
  Q.vertices = {"1"};
  Q.arrows = {{"x", 0, 0}};
  std::string rel = "x";
  for (int i = 1; i < n; ++i) rel += "*x";
  Q.relations = {rel};
  Q.nilpotency_bound = n;
  return Q;
}

}  // namespace stendo
