#include "postman/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace postman {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long parse_int(const Line& line, size_t idx, const char* what) {
  if (idx >= line.tokens.size())
    throw ParseError(line.number, std::string("missing ") + what);
  const std::string& t = line.tokens[idx];
  size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError(line.number, "bad " + std::string(what) + " '" + t + "'");
  }
  if (pos != t.size())
    throw ParseError(line.number, "bad " + std::string(what) + " '" + t + "'");
  return value;
}

void expect_arity(const Line& line, size_t n) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, "expected " + std::to_string(n - 1) +
                                      " fields after '" + line.tokens[0] + "'");
}

[[noreturn]] void rethrow_at(const Line& line, const InstanceError& e) {
  throw ParseError(line.number, e.what());
}

}  // namespace

MixedGraph parse_mixed_graph(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty document, expected 'v <n>'");
  size_t i = 0;
  if (lines[i].tokens[0] != "v")
    throw ParseError(lines[i].number, "expected header 'v <n>'");
  expect_arity(lines[i], 2);
  MixedGraph g(static_cast<int>(parse_int(lines[i], 1, "vertex count")));
  ++i;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kind = line.tokens[0];
    try {
      if (kind == "e") {
        expect_arity(line, 4);
        g.add_edge(static_cast<VertexId>(parse_int(line, 1, "endpoint")),
                   static_cast<VertexId>(parse_int(line, 2, "endpoint")),
                   parse_int(line, 3, "weight"));
      } else if (kind == "a") {
        expect_arity(line, 4);
        g.add_arc(static_cast<VertexId>(parse_int(line, 1, "tail")),
                  static_cast<VertexId>(parse_int(line, 2, "head")),
                  parse_int(line, 3, "weight"));
      } else {
        throw ParseError(line.number, "unknown directive '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InstanceError& e) {
      rethrow_at(line, e);
    }
  }
  return g;
}

std::string serialize_mixed_graph(const MixedGraph& g) {
  std::ostringstream out;
  out << "v " << g.vertex_count() << "\n";
  // Elements emitted in id order, which is parse order.
  size_t ei = 0, ai = 0;
  for (int id = 0; id < g.element_count(); ++id) {
    if (ei < g.edges().size() && g.edges()[ei].id == id) {
      const Edge& e = g.edges()[ei++];
      out << "e " << e.u << " " << e.v << " " << e.weight << "\n";
    } else {
      const Arc& a = g.arcs()[ai++];
      out << "a " << a.tail << " " << a.head << " " << a.weight << "\n";
    }
  }
  return out.str();
}

PbsInstance parse_pbs_instance(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty document, expected 'v <n>'");
  size_t i = 0;
  if (lines[i].tokens[0] != "v")
    throw ParseError(lines[i].number, "expected header 'v <n>'");
  expect_arity(lines[i], 2);
  PbsInstance p(static_cast<int>(parse_int(lines[i], 1, "vertex count")));
  ++i;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kind = line.tokens[0];
    try {
      if (kind == "a") {
        expect_arity(line, 4);
        p.add_arc(static_cast<VertexId>(parse_int(line, 1, "tail")),
                  static_cast<VertexId>(parse_int(line, 2, "head")),
                  parse_int(line, 3, "weight"));
      } else if (kind == "d") {
        expect_arity(line, 3);
        p.add_double_pair(static_cast<ArcId>(parse_int(line, 1, "arc id")),
                          static_cast<ArcId>(parse_int(line, 2, "arc id")));
      } else if (kind == "f") {
        expect_arity(line, 3);
        p.add_forbidden_pair(static_cast<ArcId>(parse_int(line, 1, "arc id")),
                             static_cast<ArcId>(parse_int(line, 2, "arc id")));
      } else {
        throw ParseError(line.number, "unknown directive '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InstanceError& e) {
      rethrow_at(line, e);
    }
  }
  return p;
}

std::string serialize_pbs_instance(const PbsInstance& p) {
  std::ostringstream out;
  out << "v " << p.vertex_count() << "\n";
  for (const auto& a : p.arcs())
    out << "a " << a.tail << " " << a.head << " " << a.weight << "\n";
  for (const auto& [a, b] : p.double_pairs()) out << "d " << a << " " << b << "\n";
  for (const auto& [a, b] : p.forbidden_pairs()) out << "f " << a << " " << b << "\n";
  return out.str();
}

ColoredGraph parse_colored_graph(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty document, expected 'k <k>'");
  size_t i = 0;
  if (lines[i].tokens[0] != "k")
    throw ParseError(lines[i].number, "expected header 'k <k>'");
  expect_arity(lines[i], 2);
  int k = static_cast<int>(parse_int(lines[i], 1, "class count"));
  ++i;
  // First pass over 'c' lines to learn the vertex count (ids must be dense).
  VertexId max_vertex = -1;
  for (size_t j = i; j < lines.size(); ++j)
    if (lines[j].tokens[0] == "c")
      max_vertex = std::max(max_vertex,
                            static_cast<VertexId>(parse_int(lines[j], 2, "vertex")));
  ColoredGraph cg(k, max_vertex + 1);
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kind = line.tokens[0];
    try {
      if (kind == "c") {
        expect_arity(line, 3);
        cg.assign_class(static_cast<VertexId>(parse_int(line, 2, "vertex")),
                        static_cast<int>(parse_int(line, 1, "class")));
      } else if (kind == "e") {
        expect_arity(line, 3);
        cg.add_edge(static_cast<VertexId>(parse_int(line, 1, "endpoint")),
                    static_cast<VertexId>(parse_int(line, 2, "endpoint")));
      } else {
        throw ParseError(line.number, "unknown directive '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InstanceError& e) {
      rethrow_at(line, e);
    }
  }
  cg.check_complete();
  return cg;
}

std::string serialize_colored_graph(const ColoredGraph& cg) {
  std::ostringstream out;
  out << "k " << cg.k() << "\n";
  for (int c = 1; c <= cg.k(); ++c)
    for (VertexId v : cg.class_vertices(c)) out << "c " << c << " " << v << "\n";
  for (const auto& e : cg.edges()) out << "e " << e.u << " " << e.v << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write file: " + path);
  out << content;
}

}  // namespace postman
