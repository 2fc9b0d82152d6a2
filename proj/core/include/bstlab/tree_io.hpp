#pragma once

#include <string>
#include <string_view>

#include "bstlab/search_tree.hpp"

namespace bstlab {

/// Parenthesized preorder: `(key left right)` with `.` for an empty subtree.
/// Integer keys are written bare, auxiliary keys as `p/q`.
std::string format_tree(const SearchTree& tree);

/// Inverse of format_tree. Throws std::invalid_argument on malformed text or
/// when the result is not a search tree.
SearchTree parse_tree(std::string_view text);

SearchTree read_tree_file(const std::string& path);
void write_tree_file(const std::string& path, const SearchTree& tree);

}  // namespace bstlab
