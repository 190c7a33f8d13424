#include "bmt/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace bmt {

namespace {

void collect_leaves(const RootedTree::Shape& s, std::vector<int>& out) {
  if (s.leaf >= 0) {
    out.push_back(s.leaf);
    return;
  }
  for (const auto& k : s.kids) collect_leaves(k, out);
}

}  // namespace

RootedTree RootedTree::from_shape(const Shape& top) {
  std::vector<int> leaves;
  collect_leaves(top, leaves);
  if (leaves.empty()) throw std::invalid_argument("tree has no leaves");

  std::vector<int> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  const int n = static_cast<int>(leaves.size());
  for (int i = 0; i < n; ++i) {
    if (sorted[i] != i + 1) {
      if (i > 0 && sorted[i] == sorted[i - 1])
        throw std::invalid_argument("duplicate leaf label " + std::to_string(sorted[i]));
      throw std::invalid_argument("leaf labels must be exactly 1.." + std::to_string(n));
    }
  }

  RootedTree t;
  t.n_ = n;
  // ids: leaves 0..n, then internal vertices in post-order starting at n+1.
  int next_internal = n + 1;
  std::function<int(const Shape&)> count_internal = [&](const Shape& s) -> int {
    int c = s.leaf < 0 ? 1 : 0;
    for (const auto& k : s.kids) c += count_internal(k);
    return c;
  };
  const int total = n + 1 + count_internal(top);
  t.parent_.assign(total, -1);
  t.depth_.assign(total, 0);
  t.children_.assign(total, {});

  std::function<int(const Shape&)> build = [&](const Shape& s) -> int {
    if (s.leaf >= 0) {
      if (!s.kids.empty()) throw std::invalid_argument("leaf with children");
      return s.leaf;
    }
    if (s.kids.size() < 2)
      throw std::invalid_argument("vertex of degree two (internal vertex with a single child)");
    std::vector<int> kid_ids;
    kid_ids.reserve(s.kids.size());
    for (const auto& k : s.kids) kid_ids.push_back(build(k));
    const int id = next_internal++;
    for (int k : kid_ids) t.parent_[k] = id;
    t.children_[id] = std::move(kid_ids);
    return id;
  };
  const int top_id = build(top);
  if (top.leaf >= 0)
    throw std::invalid_argument("vertex of degree two (root leaf with a leaf child)");
  t.parent_[top_id] = 0;
  t.children_[0] = {top_id};

  // depths by walking down from the root
  std::function<void(int)> set_depth = [&](int v) {
    for (int c : t.children_[v]) {
      t.depth_[c] = t.depth_[v] + 1;
      set_depth(c);
    }
  };
  set_depth(0);
  return t;
}

int RootedTree::parent(int v) const {
  if (!is_vertex(v)) throw std::invalid_argument("unknown vertex " + std::to_string(v));
  return parent_[v];
}

std::vector<int> RootedTree::internal_vertices() const {
  std::vector<int> out;
  for (int v = n_ + 1; v < vertex_count(); ++v) out.push_back(v);
  return out;
}

std::vector<int> RootedTree::non_root_vertices() const {
  std::vector<int> out;
  for (int v = 1; v < vertex_count(); ++v) out.push_back(v);
  return out;
}

int RootedTree::lca(int i, int j) const {
  if (!is_vertex(i) || !is_vertex(j))
    throw std::invalid_argument("unknown vertex in lca query");
  int a = i, b = j;
  while (a != b) {
    if (depth_[a] >= depth_[b])
      a = parent_[a];
    else
      b = parent_[b];
  }
  return a;
}

std::vector<int> RootedTree::path_edges(int i, int j) const {
  if (!is_vertex(i) || i > n_ || !is_vertex(j) || j > n_)
    throw std::invalid_argument("path_edges expects leaf labels");
  if (i == j) throw std::invalid_argument("path_edges requires distinct leaves");
  const int a = lca(i, j);
  std::vector<int> out;
  for (int v = i; v != a; v = parent_[v]) out.push_back(v);
  for (int v = j; v != a; v = parent_[v]) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

int RootedTree::path_length(int i, int j) const {
  if (i == j) return 0;
  const int a = lca(i, j);
  return depth_[i] + depth_[j] - 2 * depth_[a];
}

std::vector<int> RootedTree::leaves_below(int v) const {
  if (!is_vertex(v)) throw std::invalid_argument("unknown vertex");
  std::vector<int> out;
  std::function<void(int)> rec = [&](int w) {
    if (is_leaf(w)) {
      out.push_back(w);
      return;
    }
    for (int c : children_[w]) rec(c);
  };
  rec(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> RootedTree::internals_below(int v) const {
  if (!is_vertex(v)) throw std::invalid_argument("unknown vertex");
  std::vector<int> out;
  std::function<void(int)> rec = [&](int w) {
    if (is_leaf(w)) return;
    out.push_back(w);
    for (int c : children_[w]) rec(c);
  };
  rec(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::string RootedTree::newick() const {
  // min descendant leaf, for the canonical child order
  std::function<std::pair<std::string, int>(int)> rec =
      [&](int v) -> std::pair<std::string, int> {
    if (is_leaf(v)) return {std::to_string(v), v};
    std::vector<std::pair<std::string, int>> parts;
    for (int c : children_[v]) parts.push_back(rec(c));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += parts[i].first;
    }
    s += ")";
    return {s, parts.front().second};
  };
  return rec(children_[0][0]).first + ";";
}

nlohmann::json RootedTree::to_json() const {
  nlohmann::json parent = nlohmann::json::object();
  for (int v = 1; v < vertex_count(); ++v)
    parent[std::to_string(v)] = parent_[v];
  nlohmann::json j;
  j["leaves"] = leaf_count();
  j["root"] = 0;
  j["parent"] = parent;
  j["internal"] = internal_vertices();
  j["newick"] = newick();
  return j;
}

namespace {

// Minimal recursive-descent Newick reader: names are leaf numbers, no branch
// lengths or quoted labels.
struct NewickReader {
  const std::string& s;
  size_t pos = 0;

  explicit NewickReader(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("newick parse error at position " + std::to_string(pos) +
                                ": " + why);
  }

  RootedTree::Shape node() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    RootedTree::Shape sh;
    if (s[pos] == '(') {
      ++pos;
      sh.kids.push_back(node());
      skip_ws();
      while (pos < s.size() && s[pos] == ',') {
        ++pos;
        sh.kids.push_back(node());
        skip_ws();
      }
      if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
      ++pos;
    } else {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected leaf label");
      sh.leaf = std::stoi(s.substr(start, pos - start));
    }
    return sh;
  }

  RootedTree::Shape parse() {
    RootedTree::Shape top = node();
    skip_ws();
    if (pos >= s.size() || s[pos] != ';') fail("expected ';'");
    ++pos;
    skip_ws();
    if (pos != s.size()) fail("trailing input after ';'");
    return top;
  }
};

}  // namespace

RootedTree parse_newick(const std::string& text) {
  NewickReader r(text);
  RootedTree::Shape top = r.parse();
  // A top-level node with exactly one child would make the child of the root
  // leaf a degree-2 vertex; from_shape rejects it along with all other cases.
  return RootedTree::from_shape(top);
}

int lca(const RootedTree& t, int i, int j) {
  if (i > t.max_leaf() || j > t.max_leaf() || i < 0 || j < 0)
    throw std::invalid_argument("unknown leaf label in lca");
  return t.lca(i, j);
}

std::vector<int> path_edges(const RootedTree& t, int i, int j) {
  return t.path_edges(i, j);
}

QuartetTopology quartet_topology(const RootedTree& t, const std::array<int, 4>& q) {
  std::set<int> distinct(q.begin(), q.end());
  if (distinct.size() != 4) throw std::invalid_argument("quartet labels must be distinct");
  for (int x : q)
    if (x < 0 || x > t.max_leaf())
      throw std::invalid_argument("unknown leaf label " + std::to_string(x));

  const int a = q[0], b = q[1], c = q[2], d = q[3];
  // three pairings: {ab|cd}, {ac|bd}, {ad|bc}
  const int sums[3] = {
      t.path_length(a, b) + t.path_length(c, d),
      t.path_length(a, c) + t.path_length(b, d),
      t.path_length(a, d) + t.path_length(b, c),
  };
  const int lo = std::min({sums[0], sums[1], sums[2]});
  int argmin = -1, ties = 0;
  for (int k = 0; k < 3; ++k)
    if (sums[k] == lo) {
      ++ties;
      argmin = k;
    }

  QuartetTopology out;
  out.leaves = q;
  if (ties > 1) return out;  // four-point sums tie only all three at once
  out.resolved = true;
  switch (argmin) {
    case 0: out.cherries = {std::pair{a, b}, std::pair{c, d}}; break;
    case 1: out.cherries = {std::pair{a, c}, std::pair{b, d}}; break;
    default: out.cherries = {std::pair{a, d}, std::pair{b, c}}; break;
  }
  return out;
}

RootedTree star_tree(int m) {
  if (m < 2) throw std::invalid_argument("star tree needs m >= 2");
  RootedTree::Shape top;
  for (int i = 1; i <= m; ++i) {
    RootedTree::Shape leaf;
    leaf.leaf = i;
    top.kids.push_back(leaf);
  }
  return RootedTree::from_shape(top);
}

GlueResult glue_trees_detailed(const RootedTree& t_prime, int ell, int m) {
  if (ell == 0) throw std::invalid_argument("cannot glue at the root leaf");
  if (ell < 1 || ell > t_prime.max_leaf())
    throw std::invalid_argument("glue leaf must be a non-root leaf of T'");
  if (m < 2) throw std::invalid_argument("glued star needs m >= 2");

  const int np = t_prime.max_leaf();
  // surviving labels shift down past ell; fresh leaves take np .. np+m-1
  std::vector<int> relabel(np + 1, -1);
  for (int x = 0; x <= np; ++x) {
    if (x == ell) continue;
    relabel[x] = x < ell ? x : x - 1;
  }
  std::vector<int> fresh;
  for (int k = 0; k < m; ++k) fresh.push_back(np + k);

  std::function<RootedTree::Shape(int)> rec = [&](int v) -> RootedTree::Shape {
    RootedTree::Shape sh;
    if (t_prime.is_leaf(v)) {
      if (v == ell) {
        for (int lab : fresh) {
          RootedTree::Shape leaf;
          leaf.leaf = lab;
          sh.kids.push_back(leaf);
        }
      } else {
        sh.leaf = relabel[v];
      }
      return sh;
    }
    for (int c : t_prime.children(v)) sh.kids.push_back(rec(c));
    return sh;
  };

  GlueResult out{RootedTree::from_shape(rec(t_prime.children(0)[0])),
                 std::move(relabel), std::move(fresh), 0};
  out.center = out.tree.lca(out.new_leaves[0], out.new_leaves[1]);
  return out;
}

RootedTree glue_trees(const RootedTree& t_prime, int ell, int m) {
  return glue_trees_detailed(t_prime, ell, m).tree;
}

}  // namespace bmt
