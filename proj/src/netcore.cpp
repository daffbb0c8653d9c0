#include "dominet/netcore.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

namespace dominet {

DirectedGraph::DirectedGraph(int n, std::vector<std::pair<Vertex, Vertex>> arcs) : n_(n) {
  if (n < 1 || n > kMaxVertices)
    throw std::invalid_argument(fmt::format("vertex count {} outside 1..{}", n, kMaxVertices));
  in_.resize(n);
  out_.resize(n);
  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto [u, v] : arcs) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument(fmt::format("arc ({},{}) out of range", u, v));
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument(fmt::format("duplicate arc ({},{})", u, v));
    in_[v - 1].push_back(u);
    out_[u - 1].push_back(v);
  }
  arc_count_ = static_cast<int>(seen.size());
  for (int i = 0; i < n; ++i) {
    std::sort(in_[i].begin(), in_[i].end());
    std::sort(out_[i].begin(), out_[i].end());
    if (in_[i].empty())
      throw std::invalid_argument(fmt::format("vertex {} has an empty input set", i + 1));
  }
}

bool DirectedGraph::has_arc(Vertex from, Vertex to) const {
  const auto& ins = in_[to - 1];
  return std::binary_search(ins.begin(), ins.end(), from);
}

std::vector<std::pair<Vertex, Vertex>> DirectedGraph::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  result.reserve(arc_count_);
  for (Vertex u = 1; u <= n_; ++u)
    for (Vertex v : out_[u - 1]) result.emplace_back(u, v);
  return result;
}

std::vector<std::uint8_t> identity_table() { return {0, 1}; }
std::vector<std::uint8_t> negation_table() { return {1, 0}; }
std::vector<std::uint8_t> constant_table(int state) {
  return {static_cast<std::uint8_t>(state > 0), static_cast<std::uint8_t>(state > 0)};
}

Configuration Configuration::from_states(std::span<const int> states) {
  const int n = static_cast<int>(states.size());
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    bits <<= 1;
    bits |= states[i] > 0 ? 1u : 0u;
  }
  return Configuration(bits, n);
}

Configuration Configuration::with_state(Vertex v, int state) const {
  const std::uint64_t mask = 1ULL << (n_ - v);
  return Configuration(state > 0 ? (bits_ | mask) : (bits_ & ~mask), n_);
}

std::vector<int> Configuration::states() const {
  std::vector<int> result(n_);
  for (Vertex v = 1; v <= n_; ++v) result[v - 1] = state(v);
  return result;
}

Configuration Configuration::negated() const {
  const std::uint64_t mask = n_ == 64 ? ~0ULL : (1ULL << n_) - 1;
  return Configuration(~bits_ & mask, n_);
}

namespace {

DirectedGraph graph_from_rules(const std::vector<LocalRule>& rules) {
  const int n = static_cast<int>(rules.size());
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (int v = 1; v <= n; ++v)
    for (Vertex u : rules[v - 1].inputs) arcs.emplace_back(u, v);
  return DirectedGraph(n, std::move(arcs));
}

}  // namespace

BooleanNetwork::BooleanNetwork(std::vector<LocalRule> rules)
    : graph_(graph_from_rules(rules)), rules_(std::move(rules)) {
  for (int v = 1; v <= vertex_count(); ++v) {
    auto& rule = rules_[v - 1];
    if (!std::is_sorted(rule.inputs.begin(), rule.inputs.end()))
      throw std::invalid_argument(fmt::format("inputs of vertex {} not ascending", v));
    const std::size_t expected = 1ULL << rule.inputs.size();
    if (rule.table.size() != expected)
      throw std::invalid_argument(
          fmt::format("vertex {}: table has {} entries, expected {}", v, rule.table.size(), expected));
    for (auto e : rule.table)
      if (e > 1) throw std::invalid_argument(fmt::format("vertex {}: non-binary table entry", v));
  }
}

int evaluate_rule(const LocalRule& rule, const Configuration& x) {
  std::size_t index = 0;
  for (Vertex u : rule.inputs) index = (index << 1) | (x.state(u) > 0 ? 1u : 0u);
  return rule.table[index] ? +1 : -1;
}

Configuration step(const BooleanNetwork& net, const Configuration& x) {
  const int n = net.vertex_count();
  if (x.size() != n)
    throw std::invalid_argument(
        fmt::format("configuration has {} vertices, network has {}", x.size(), n));
  std::uint64_t bits = 0;
  for (Vertex v = 1; v <= n; ++v) {
    bits <<= 1;
    bits |= evaluate_rule(net.rule(v), x) > 0 ? 1u : 0u;
  }
  return Configuration(bits, n);
}

Configuration iterate(const BooleanNetwork& net, Configuration x, long steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  for (long i = 0; i < steps; ++i) x = step(net, x);
  return x;
}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

int parse_int(const Token& token, int line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
  if (ec != std::errc() || ptr != token.text.data() + token.text.size())
    throw ParseError(line_no, token.column, fmt::format("expected {}, got '{}'", what, token.text));
  return value;
}

}  // namespace

NetworkDocument parse_document(std::string_view text) {
  // Split into physical lines, keeping 1-based numbering.
  std::vector<std::pair<int, std::vector<Token>>> lines;
  {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      auto tokens = tokenize(text.substr(pos, end - pos));
      if (!tokens.empty()) lines.emplace_back(line_no, std::move(tokens));
      pos = end + 1;
    }
  }
  if (lines.empty()) throw ParseError(1, 0, "empty document");

  std::size_t cursor = 0;
  {
    const auto& [line_no, tokens] = lines[cursor];
    if (tokens.size() != 2 || tokens[0].text != "boolnet" || tokens[1].text != "1")
      throw ParseError(line_no, tokens[0].column, "expected header 'boolnet 1'");
    ++cursor;
  }
  int n = 0;
  {
    if (cursor >= lines.size()) throw ParseError(lines.back().first, 0, "missing 'nodes' line");
    const auto& [line_no, tokens] = lines[cursor];
    if (tokens.size() != 2 || tokens[0].text != "nodes")
      throw ParseError(line_no, tokens[0].column, "expected 'nodes <n>'");
    n = parse_int(tokens[1], line_no, "vertex count");
    if (n < 1 || n > kMaxVertices)
      throw ParseError(line_no, tokens[1].column,
                       fmt::format("vertex count {} outside 1..{}", n, kMaxVertices));
    ++cursor;
  }

  std::vector<LocalRule> rules(n);
  std::vector<bool> declared(n, false);
  int last_id = 0;
  while (cursor < lines.size() && lines[cursor].second[0].text == "node") {
    const auto& [line_no, tokens] = lines[cursor];
    std::size_t i = 1;
    if (i >= tokens.size()) throw ParseError(line_no, 0, "expected 'node <id> in ... table <t>'");
    const int id = parse_int(tokens[i], line_no, "vertex id");
    if (id < 1 || id > n)
      throw ParseError(line_no, tokens[i].column, fmt::format("vertex id {} outside 1..{}", id, n));
    if (declared[id - 1]) throw ParseError(line_no, tokens[i].column, fmt::format("duplicate vertex {}", id));
    if (id <= last_id)
      throw ParseError(line_no, tokens[i].column, fmt::format("vertex {} out of ascending order", id));
    ++i;
    if (i >= tokens.size() || tokens[i].text != "in")
      throw ParseError(line_no, i < tokens.size() ? tokens[i].column : 0, "expected 'in'");
    ++i;
    std::vector<Vertex> inputs;
    while (i < tokens.size() && tokens[i].text != "table") {
      const int u = parse_int(tokens[i], line_no, "input vertex id");
      if (u < 1 || u > n)
        throw ParseError(line_no, tokens[i].column, fmt::format("input id {} outside 1..{}", u, n));
      inputs.push_back(u);
      ++i;
    }
    if (inputs.empty()) throw ParseError(line_no, tokens[1].column, fmt::format("vertex {}: empty input set", id));
    if (inputs.size() > static_cast<std::size_t>(kMaxEnumerationBits))
      throw ParseError(line_no, tokens[1].column, fmt::format("vertex {}: too many inputs", id));
    std::vector<Vertex> sorted = inputs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(line_no, tokens[1].column, fmt::format("vertex {}: duplicate input", id));
    if (sorted != inputs)
      throw ParseError(line_no, tokens[1].column, fmt::format("vertex {}: inputs not ascending", id));
    if (i >= tokens.size()) throw ParseError(line_no, 0, "expected 'table <t>'");
    ++i;  // skip 'table'
    if (i >= tokens.size()) throw ParseError(line_no, 0, "missing table string");
    const Token table_token = tokens[i];
    const std::size_t expected = 1ULL << inputs.size();
    if (table_token.text.size() != expected)
      throw ParseError(line_no, table_token.column,
                       fmt::format("vertex {}: table length {} does not match 2^{} = {}", id,
                                   table_token.text.size(), inputs.size(), expected));
    std::vector<std::uint8_t> table(expected);
    for (std::size_t k = 0; k < expected; ++k) {
      const char c = table_token.text[k];
      if (c != '0' && c != '1')
        throw ParseError(line_no, table_token.column + static_cast<int>(k),
                         fmt::format("table character '{}' is not 0 or 1", c));
      table[k] = c == '1';
    }
    ++i;
    if (i < tokens.size())
      throw ParseError(line_no, tokens[i].column, fmt::format("trailing token '{}'", tokens[i].text));
    rules[id - 1] = LocalRule{std::move(inputs), std::move(table)};
    declared[id - 1] = true;
    last_id = id;
    ++cursor;
  }
  for (int v = 1; v <= n; ++v)
    if (!declared[v - 1])
      throw ParseError(lines.back().first, 0, fmt::format("vertex {} has no node line", v));

  BooleanNetwork net(std::move(rules));

  std::vector<SignEntry> signs;
  std::set<std::pair<Vertex, Vertex>> signed_arcs;
  while (cursor < lines.size() && lines[cursor].second[0].text == "sign") {
    const auto& [line_no, tokens] = lines[cursor];
    if (tokens.size() != 4)
      throw ParseError(line_no, tokens[0].column, "expected 'sign <u> <v> <+1|-1>'");
    const int u = parse_int(tokens[1], line_no, "vertex id");
    const int v = parse_int(tokens[2], line_no, "vertex id");
    if (u < 1 || u > n || v < 1 || v > n || !net.graph().has_arc(u, v))
      throw ParseError(line_no, tokens[1].column, fmt::format("sign for non-arc ({},{})", u, v));
    int sign = 0;
    if (tokens[3].text == "+1")
      sign = +1;
    else if (tokens[3].text == "-1")
      sign = -1;
    else
      throw ParseError(line_no, tokens[3].column, "sign value must be +1 or -1");
    if (!signed_arcs.insert({u, v}).second)
      throw ParseError(line_no, tokens[1].column, fmt::format("duplicate sign for arc ({},{})", u, v));
    signs.push_back({u, v, sign});
    ++cursor;
  }

  if (cursor < lines.size()) {
    const auto& [line_no, tokens] = lines[cursor];
    throw ParseError(line_no, tokens[0].column,
                     fmt::format("unexpected line starting with '{}'", tokens[0].text));
  }
  return NetworkDocument{std::move(net), std::move(signs)};
}

BooleanNetwork parse_network(std::string_view text) { return parse_document(text).net; }

std::string serialize_network(const BooleanNetwork& net) {
  std::string out = fmt::format("boolnet 1\nnodes {}\n", net.vertex_count());
  for (Vertex v = 1; v <= net.vertex_count(); ++v) {
    const LocalRule& rule = net.rule(v);
    out += fmt::format("node {} in", v);
    for (Vertex u : rule.inputs) out += fmt::format(" {}", u);
    out += " table ";
    for (auto e : rule.table) out += e ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace dominet
