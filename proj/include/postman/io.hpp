#pragma once

#include <string>

#include "postman/graph.hpp"

namespace postman {

// Line-based, whitespace-tolerant text formats. '#' starts a comment.
//
// Mixed graph:    v <n>       then   e <u> <v> <w>   |   a <tail> <head> <w>
// PBS instance:   v <n>       then   a <tail> <head> <w>  (arc ids 0-based
//                 in order)   |   d <id> <id>   |   f <id> <id>
// Colored graph:  k <k>       then   c <class> <vertex>   |   e <u> <v>
//                 (edge index = order of appearance, 1-based)

MixedGraph parse_mixed_graph(const std::string& text);
std::string serialize_mixed_graph(const MixedGraph& g);

PbsInstance parse_pbs_instance(const std::string& text);
std::string serialize_pbs_instance(const PbsInstance& p);

ColoredGraph parse_colored_graph(const std::string& text);
std::string serialize_colored_graph(const ColoredGraph& cg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace postman
