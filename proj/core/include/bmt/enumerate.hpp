#ifndef BMT_ENUMERATE_HPP
#define BMT_ENUMERATE_HPP

#include <vector>

#include "bmt/tree.hpp"

namespace bmt {

/// All rooted topologies on leaves {0..num_leaves-1} without degree-2
/// vertices, each exactly once, in canonical Newick order. Grows trees by
/// leaf insertion: attaching the next leaf to an internal vertex or
/// subdividing an edge; deleting the largest leaf inverts either move
/// uniquely, so no duplicates arise. Counts: 1, 4, 26, 236 for 3..6 leaves.
std::vector<RootedTree> all_topologies(int num_leaves);

/// Same, for every leaf count from 3 to max_leaves inclusive.
std::vector<RootedTree> all_topologies_up_to(int max_leaves);

}  // namespace bmt

#endif
