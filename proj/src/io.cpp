#include "mcflab/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace mcflab {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

Rational rational_token(const Line& line, size_t i) {
  if (i >= line.tokens.size()) parse_error(line.number, "missing field " + std::to_string(i));
  auto q = parse_rational(line.tokens[i]);
  if (!q) parse_error(line.number, "bad number '" + line.tokens[i] + "'");
  return *q;
}

long integer_token(const Line& line, size_t i) {
  const Rational q = rational_token(line, i);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    parse_error(line.number, "expected an integer, got '" + line.tokens[i] + "'");
  }
  return q.get_num().get_si();
}

// Everything in a DIMACS-family file, with extension lines kept for the
// caller to resolve once all arcs are known.
struct RawFile {
  FlowNetwork network;
  bool has_problem = false;
  int declared_arcs = 0;
  std::vector<Line> extensions;
};

RawFile read_raw(std::istream& in, bool allow_extensions) {
  RawFile raw;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0] == "c") continue;
    const std::string& kind = line.tokens[0];
    if (kind == "p") {
      if (raw.has_problem) parse_error(number, "duplicate problem line");
      if (line.tokens.size() != 4 || line.tokens[1] != "min") {
        parse_error(number, "expected 'p min <nodes> <arcs>'");
      }
      const long nodes = integer_token(line, 2);
      const long arcs = integer_token(line, 3);
      if (nodes < 0 || arcs < 0) parse_error(number, "negative size");
      raw.network = FlowNetwork(static_cast<int>(nodes));
      raw.declared_arcs = static_cast<int>(arcs);
      raw.has_problem = true;
      continue;
    }
    if (!raw.has_problem) parse_error(number, "'" + kind + "' line before the problem line");
    auto node_token = [&](size_t i) {
      const long id = integer_token(line, i);
      if (id < 1 || id > raw.network.node_count()) {
        parse_error(number, "node id " + std::to_string(id) + " out of range");
      }
      return static_cast<NodeId>(id - 1);
    };
    if (kind == "n") {
      if (line.tokens.size() != 3) parse_error(number, "expected 'n <id> <budget>'");
      raw.network.set_budget(node_token(1), rational_token(line, 2));
    } else if (kind == "a") {
      if (line.tokens.size() != 6) parse_error(number, "expected 'a <src> <dst> <low> <cap> <cost>'");
      const NodeId tail = node_token(1);
      const NodeId head = node_token(2);
      if (rational_token(line, 3) != 0) parse_error(number, "nonzero lower bound");
      Capacity cap = line.tokens[4] == "inf" ? Capacity::unbounded()
                                             : Capacity(rational_token(line, 4));
      if (raw.network.edge_count() >= raw.declared_arcs) parse_error(number, "more arcs than declared");
      raw.network.add_edge(tail, head, std::move(cap), rational_token(line, 5));
    } else if (allow_extensions) {
      raw.extensions.push_back(std::move(line));
    } else {
      parse_error(number, "unknown line type '" + kind + "'");
    }
  }
  if (!raw.has_problem) parse_error(number, "missing problem line");
  if (raw.network.edge_count() != raw.declared_arcs) {
    parse_error(number, "declared " + std::to_string(raw.declared_arcs) + " arcs, found " +
                            std::to_string(raw.network.edge_count()));
  }
  return raw;
}

std::map<std::pair<NodeId, NodeId>, EdgeId> edge_index(const FlowNetwork& net) {
  std::map<std::pair<NodeId, NodeId>, EdgeId> index;
  for (EdgeId e = 0; e < net.edge_count(); ++e) index[{net.edge(e).tail, net.edge(e).head}] = e;
  return index;
}

EdgeId edge_by_endpoints(const std::map<std::pair<NodeId, NodeId>, EdgeId>& index,
                         const FlowNetwork& net, const Line& line) {
  auto node = [&](size_t i) {
    const long id = integer_token(line, i);
    if (id < 1 || id > net.node_count()) parse_error(line.number, "node id out of range");
    return static_cast<NodeId>(id - 1);
  };
  const auto it = index.find({node(1), node(2)});
  if (it == index.end()) parse_error(line.number, "no arc between the given nodes");
  return it->second;
}

void write_header(std::ostream& out, const FlowNetwork& net) {
  out << "p min " << net.node_count() << ' ' << net.edge_count() << '\n';
}

void write_nodes_and_arcs(std::ostream& out, const FlowNetwork& net) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.budget(v) != 0) out << "n " << v + 1 << ' ' << to_string(net.budget(v)) << '\n';
  }
  for (const auto& e : net.edges()) {
    out << "a " << e.tail + 1 << ' ' << e.head + 1 << " 0 " << to_string(e.capacity) << ' '
        << to_string(e.cost) << '\n';
  }
}

void write_edge_list(std::ostream& out, char kind, const std::vector<EdgeId>& ids) {
  for (size_t i = 0; i < ids.size(); i += 20) {
    out << kind;
    for (size_t j = i; j < ids.size() && j < i + 20; ++j) out << ' ' << ids[j] + 1;
    out << '\n';
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  return out;
}

}  // namespace

FlowNetwork read_dimacs(std::istream& in) { return read_raw(in, false).network; }

void write_dimacs(std::ostream& out, const FlowNetwork& net) {
  out << "c mcflab min-cost flow network\n";
  write_header(out, net);
  write_nodes_and_arcs(out, net);
}

FlowNetwork read_dimacs_file(const std::string& path) {
  auto in = open_in(path);
  return read_dimacs(in);
}

void write_dimacs_file(const std::string& path, const FlowNetwork& net) {
  auto out = open_out(path);
  write_dimacs(out, net);
}

SmoothedInstance read_smoothed(std::istream& in) {
  RawFile raw = read_raw(in, true);
  SmoothedInstance inst;
  inst.network = std::move(raw.network);
  FlowNetwork& net = inst.network;
  const auto index = edge_index(net);
  std::vector<std::optional<CostInterval>> intervals(static_cast<size_t>(net.edge_count()));
  bool has_phi = false;
  std::optional<NodeId> root;
  std::vector<EdgeId> tree;
  std::vector<EdgeId> upper;
  Flow start = Flow::zero(net);
  bool has_start = false;
  int last_line = 0;
  auto arc_ids = [&](const Line& line, std::vector<EdgeId>& into) {
    for (size_t i = 1; i < line.tokens.size(); ++i) {
      const long id = integer_token(line, i);
      if (id < 1 || id > net.edge_count()) parse_error(line.number, "arc id out of range");
      into.push_back(static_cast<EdgeId>(id - 1));
    }
  };
  for (const Line& line : raw.extensions) {
    last_line = line.number;
    const std::string& kind = line.tokens[0];
    if (kind == "phi") {
      if (line.tokens.size() != 2) parse_error(line.number, "expected 'phi <value>'");
      inst.phi = rational_token(line, 1);
      if (inst.phi <= 0) parse_error(line.number, "phi must be positive");
      has_phi = true;
    } else if (kind == "i") {
      if (line.tokens.size() != 5) parse_error(line.number, "expected 'i <src> <dst> <lo> <width>'");
      const EdgeId e = edge_by_endpoints(index, net, line);
      intervals[static_cast<size_t>(e)] = CostInterval{rational_token(line, 3), rational_token(line, 4)};
      if (intervals[static_cast<size_t>(e)]->width < 0) parse_error(line.number, "negative width");
    } else if (kind == "f") {
      if (line.tokens.size() != 4) parse_error(line.number, "expected 'f <src> <dst> <value>'");
      start[edge_by_endpoints(index, net, line)] = rational_token(line, 3);
      has_start = true;
    } else if (kind == "r") {
      if (line.tokens.size() != 4) parse_error(line.number, "expected 'r <src> <dst> <rank>'");
      const EdgeId e = edge_by_endpoints(index, net, line);
      const Edge& old = net.edge(e);
      // Edges are immutable apart from cost; rebuild with the rank.
      FlowNetwork rebuilt(net.node_count());
      for (EdgeId x = 0; x < net.edge_count(); ++x) {
        const Edge& ed = net.edge(x);
        rebuilt.add_edge(ed.tail, ed.head, ed.capacity, ed.cost,
                         x == e ? static_cast<int>(integer_token(line, 3)) : ed.leaving_rank);
      }
      for (NodeId v = 0; v < net.node_count(); ++v) rebuilt.set_budget(v, net.budget(v));
      (void)old;
      net = std::move(rebuilt);
    } else if (kind == "root") {
      if (line.tokens.size() != 2) parse_error(line.number, "expected 'root <id>'");
      const long id = integer_token(line, 1);
      if (id < 1 || id > net.node_count()) parse_error(line.number, "root out of range");
      root = static_cast<NodeId>(id - 1);
    } else if (kind == "t") {
      arc_ids(line, tree);
    } else if (kind == "u") {
      arc_ids(line, upper);
    } else {
      parse_error(line.number, "unknown line type '" + kind + "'");
    }
  }
  if (!has_phi) parse_error(last_line, "missing phi line");
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!intervals[static_cast<size_t>(e)]) {
      parse_error(last_line, "arc " + std::to_string(e + 1) + " has no interval line");
    }
    inst.intervals.push_back(*intervals[static_cast<size_t>(e)]);
  }
  if (has_start) inst.starting_flow = std::move(start);
  if (!tree.empty() || !upper.empty() || root) {
    TreeBasis basis{std::vector<EdgeState>(static_cast<size_t>(net.edge_count()), EdgeState::Lower),
                    root.value_or(0)};
    for (EdgeId e : tree) basis.state[static_cast<size_t>(e)] = EdgeState::Tree;
    for (EdgeId e : upper) {
      if (basis.state[static_cast<size_t>(e)] == EdgeState::Tree) {
        parse_error(last_line, "arc " + std::to_string(e + 1) + " listed in both t and u");
      }
      basis.state[static_cast<size_t>(e)] = EdgeState::Upper;
    }
    inst.initial_basis = std::move(basis);
  }
  return inst;
}

void write_smoothed(std::ostream& out, const SmoothedInstance& inst) {
  const FlowNetwork& net = inst.network;
  out << "c mcflab smoothed instance\n";
  write_header(out, net);
  out << "phi " << to_string(inst.phi) << '\n';
  write_nodes_and_arcs(out, net);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    const CostInterval& iv = inst.intervals.at(static_cast<size_t>(e));
    out << "i " << edge.tail + 1 << ' ' << edge.head + 1 << ' ' << to_string(iv.lo) << ' '
        << to_string(iv.width) << '\n';
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.leaving_rank != 0) {
      out << "r " << edge.tail + 1 << ' ' << edge.head + 1 << ' ' << edge.leaving_rank << '\n';
    }
  }
  if (inst.starting_flow) {
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const Rational& v = (*inst.starting_flow)[e];
      if (v != 0) {
        out << "f " << net.edge(e).tail + 1 << ' ' << net.edge(e).head + 1 << ' ' << to_string(v)
            << '\n';
      }
    }
  }
  if (inst.initial_basis) {
    const TreeBasis& basis = *inst.initial_basis;
    out << "root " << basis.root + 1 << '\n';
    std::vector<EdgeId> tree;
    std::vector<EdgeId> upper;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      if (basis.state[static_cast<size_t>(e)] == EdgeState::Tree) tree.push_back(e);
      if (basis.state[static_cast<size_t>(e)] == EdgeState::Upper) upper.push_back(e);
    }
    write_edge_list(out, 't', tree);
    write_edge_list(out, 'u', upper);
  }
}

SmoothedInstance read_smoothed_file(const std::string& path) {
  auto in = open_in(path);
  return read_smoothed(in);
}

void write_smoothed_file(const std::string& path, const SmoothedInstance& inst) {
  auto out = open_out(path);
  write_smoothed(out, inst);
}

Flow read_flow(std::istream& in, const FlowNetwork& net) {
  const auto index = edge_index(net);
  Flow f = Flow::zero(net);
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0] == "c") continue;
    if (line.tokens[0] != "f" || line.tokens.size() != 4) {
      parse_error(number, "expected 'f <src> <dst> <value>'");
    }
    f[edge_by_endpoints(index, net, line)] = rational_token(line, 3);
  }
  return f;
}

void write_flow(std::ostream& out, const FlowNetwork& net, const Flow& f) {
  out << "c mcflab flow\n";
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (f[e] != 0) {
      out << "f " << net.edge(e).tail + 1 << ' ' << net.edge(e).head + 1 << ' ' << to_string(f[e])
          << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const MmccTrace& trace) {
  out << "iteration,mu,delta,cycle_length,cycle_nodes\n";
  for (size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    out << i + 1 << ',' << to_string(it.mu) << ',' << to_string(it.delta) << ','
        << it.cycle.length() << ',';
    const auto nodes = it.cycle.nodes();
    for (size_t j = 0; j < nodes.size(); ++j) out << (j ? " " : "") << nodes[j] + 1;
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const NsTrace& trace) {
  out << "pivot,entering,leaving,delta,degenerate,reduced_cost\n";
  for (size_t i = 0; i < trace.pivots.size(); ++i) {
    const auto& p = trace.pivots[i];
    out << i + 1 << ',' << p.entering + 1 << ',' << p.leaving + 1 << ',' << to_string(p.delta)
        << ',' << (p.degenerate ? "true" : "false") << ',' << to_string(p.reduced_cost_of_entering)
        << '\n';
  }
}

void write_trace_csv(std::ostream& out, const SspTrace& trace) {
  out << "augmentation,path_cost,amount,path\n";
  for (size_t i = 0; i < trace.augmentations.size(); ++i) {
    const auto& a = trace.augmentations[i];
    out << i + 1 << ',' << to_string(a.path_cost) << ',' << to_string(a.amount) << ',';
    for (size_t j = 0; j < a.path.size(); ++j) out << (j ? " " : "") << a.path[j] + 1;
    out << '\n';
  }
}

}  // namespace mcflab
