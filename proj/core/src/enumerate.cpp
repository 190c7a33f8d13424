#include "bmt/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bmt {

namespace {

using Shape = RootedTree::Shape;

// Every way of adding leaf `lab`: as a new child of each internal vertex, or
// by subdividing each edge (one edge per non-root vertex, including the edge
// above the outermost node).
void grow(const Shape& top, int lab, std::vector<Shape>& out) {
  // attach to an internal vertex
  std::function<void(const Shape&, std::vector<Shape>&)> attach =
      [&](const Shape& node, std::vector<Shape>& acc) {
        if (node.leaf >= 0) return;
        Shape here = node;
        Shape leaf;
        leaf.leaf = lab;
        here.kids.push_back(leaf);
        acc.push_back(here);
        for (size_t i = 0; i < node.kids.size(); ++i) {
          std::vector<Shape> sub;
          attach(node.kids[i], sub);
          for (auto& s : sub) {
            Shape copy = node;
            copy.kids[i] = std::move(s);
            acc.push_back(std::move(copy));
          }
        }
      };
  attach(top, out);

  // subdivide the edge above `node` (new internal vertex with two children)
  auto wrap = [&](const Shape& node) {
    Shape mid;
    mid.kids.push_back(node);
    Shape leaf;
    leaf.leaf = lab;
    mid.kids.push_back(leaf);
    return mid;
  };
  out.push_back(wrap(top));  // the root edge
  std::function<void(const Shape&, std::vector<Shape>&)> subdivide =
      [&](const Shape& node, std::vector<Shape>& acc) {
        if (node.leaf >= 0) return;
        for (size_t i = 0; i < node.kids.size(); ++i) {
          Shape copy = node;
          copy.kids[i] = wrap(node.kids[i]);
          acc.push_back(copy);
          std::vector<Shape> sub;
          subdivide(node.kids[i], sub);
          for (auto& s : sub) {
            Shape outer = node;
            outer.kids[i] = std::move(s);
            acc.push_back(std::move(outer));
          }
        }
      };
  subdivide(top, out);
}

}  // namespace

std::vector<RootedTree> all_topologies(int num_leaves) {
  if (num_leaves < 3) throw std::invalid_argument("need at least 3 leaves");
  std::vector<Shape> shapes;
  {
    Shape top;
    for (int i = 1; i <= 2; ++i) {
      Shape leaf;
      leaf.leaf = i;
      top.kids.push_back(leaf);
    }
    shapes.push_back(top);
  }
  for (int lab = 3; lab < num_leaves; ++lab) {
    std::vector<Shape> next;
    for (const auto& s : shapes) grow(s, lab, next);
    shapes = std::move(next);
  }
  std::vector<RootedTree> out;
  out.reserve(shapes.size());
  for (const auto& s : shapes) out.push_back(RootedTree::from_shape(s));
  std::sort(out.begin(), out.end(), [](const RootedTree& a, const RootedTree& b) {
    return a.newick() < b.newick();
  });
  return out;
}

std::vector<RootedTree> all_topologies_up_to(int max_leaves) {
  std::vector<RootedTree> out;
  for (int k = 3; k <= max_leaves; ++k) {
    auto batch = all_topologies(k);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace bmt
