#pragma once

// On-disk tree format (line based, "#" starts a comment):
//
//   tree <node-count>
//   <id> <parent-id|-> <color|->
//
// One line per node; the line order of a parent's children defines their
// child ranks. The root has parent "-". Internal nodes have color "-",
// leaves carry a nonnegative integer color. Node ids are arbitrary
// nonnegative integers; they are renumbered densely on load.

#include <string>

#include "symtree/search_tree.hpp"

namespace symtree {

struct format_error : tree_error {
    using tree_error::tree_error;
};

search_tree load_tree(const std::string& text);
search_tree load_tree_file(const std::string& path);

// save_tree emits nodes in breadth-first order with dense ids, so
// load_tree(save_tree(t)) reproduces t up to node-id renaming that
// preserves child order.
std::string save_tree(const search_tree& t);
void save_tree_file(const search_tree& t, const std::string& path);

}  // namespace symtree
