#include "krc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace krc {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw KrcError(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    parse_fail(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

int to_count(std::string_view tok, int line) {
  std::int64_t v = to_int(tok, line);
  if (v < 0 || v > std::numeric_limits<int>::max())
    parse_fail(line, "count out of range: " + std::string(tok));
  return static_cast<int>(v);
}

struct Record {
  int line;
  std::vector<std::string_view> tokens;
};

// Non-empty, comment-stripped records with their 1-based line numbers.
std::vector<Record> records_of(std::string_view text) {
  std::vector<Record> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokens_of(line);
    if (!toks.empty()) out.push_back({line_no, std::move(toks)});
    pos = end + 1;
  }
  return out;
}

// Header check shared by the three formats.
const Record& header(const std::vector<Record>& recs, std::string_view kind, std::size_t arity) {
  if (recs.empty()) throw KrcError(ErrorCode::ParseError, "empty input");
  const Record& h = recs.front();
  if (h.tokens[0] != "p" || h.tokens.size() < 2 || h.tokens[1] != kind)
    parse_fail(h.line, "expected header 'p " + std::string(kind) + " ...'");
  if (h.tokens.size() != arity) parse_fail(h.line, "header has wrong number of fields");
  return h;
}

void expect_arity(const Record& rec, std::size_t arity) {
  if (rec.tokens.size() != arity)
    parse_fail(rec.line, "record '" + std::string(rec.tokens[0]) + "' needs " +
                             std::to_string(arity - 1) + " fields");
}

std::string weight_text(Weight w) { return is_inf(w) ? "inf" : std::to_string(w); }

}  // namespace

Instance parse_instance(std::string_view text) {
  auto recs = records_of(text);
  const Record& h = header(recs, "krc", 7);
  Instance inst;
  if (h.tokens[2] == "ec")
    inst.flavor = Flavor::EdgeConnectivity;
  else if (h.tokens[2] == "vc")
    inst.flavor = Flavor::VertexConnectivity;
  else
    parse_fail(h.line, "flavor must be 'ec' or 'vc'");
  const int n = to_count(h.tokens[3], h.line);
  const int m = to_count(h.tokens[4], h.line);
  const int r = to_count(h.tokens[5], h.line);
  inst.k = to_count(h.tokens[6], h.line);
  if (inst.k < 1) parse_fail(h.line, "k must be >= 1");
  inst.graph = Graph(n);

  int edges = 0;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const Record& rec = recs[i];
    const auto& t = rec.tokens;
    try {
      if (t[0] == "e") {
        expect_arity(rec, 4);
        if (inst.demands.size() > 0) parse_fail(rec.line, "edge after demand records");
        if (edges == m) parse_fail(rec.line, "more than " + std::to_string(m) + " edges");
        Weight w = t[3] == "inf" ? kInf : to_int(t[3], rec.line);
        if (w == kInf && t[3] != "inf") parse_fail(rec.line, "weight collides with inf");
        inst.graph.add_edge(static_cast<Vertex>(to_int(t[1], rec.line)),
                            static_cast<Vertex>(to_int(t[2], rec.line)), w);
        ++edges;
      } else if (t[0] == "d") {
        expect_arity(rec, 3);
        if (inst.demands.size() == r) parse_fail(rec.line, "more than " + std::to_string(r) + " demands");
        std::int64_t s = to_int(t[1], rec.line);
        std::int64_t d = to_int(t[2], rec.line);
        if (s == d) parse_fail(rec.line, "demand endpoints coincide");
        if (s < 0 || s >= n || d < 0 || d >= n)
          throw KrcError(ErrorCode::InvalidVertex, "demand endpoint out of range");
        inst.demands.add(static_cast<Vertex>(s), static_cast<Vertex>(d));
      } else if (t[0] == "p") {
        parse_fail(rec.line, "duplicate header");
      } else {
        parse_fail(rec.line, "unknown record '" + std::string(t[0]) + "'");
      }
    } catch (const KrcError& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      throw KrcError(e.code(), "line " + std::to_string(rec.line) + ": " + e.what());
    }
  }
  if (edges != m)
    throw KrcError(ErrorCode::ParseError,
                   "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges));
  if (inst.demands.size() != r)
    throw KrcError(ErrorCode::ParseError, "header declares " + std::to_string(r) +
                                              " demands, found " +
                                              std::to_string(inst.demands.size()));
  return inst;
}

std::string render_instance(const Instance& inst) {
  std::ostringstream out;
  const Graph& g = inst.graph;
  out << "p krc " << (inst.flavor == Flavor::EdgeConnectivity ? "ec" : "vc") << ' '
      << g.vertex_count() << ' ' << g.edge_count() << ' ' << inst.demands.size() << ' '
      << inst.k << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << weight_text(e.w) << '\n';
  for (const DemandPair& p : inst.demands.pairs()) out << "d " << p.s << ' ' << p.t << '\n';
  return out.str();
}

Bipartite parse_bipartite(std::string_view text) {
  auto recs = records_of(text);
  const Record& h = header(recs, "bip", 5);
  Bipartite bip;
  bip.left_count = to_count(h.tokens[2], h.line);
  bip.right_count = to_count(h.tokens[3], h.line);
  const int m = to_count(h.tokens[4], h.line);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const Record& rec = recs[i];
    if (rec.tokens[0] != "e") parse_fail(rec.line, "expected 'e <left> <right>'");
    expect_arity(rec, 3);
    bip.edges.emplace_back(to_count(rec.tokens[1], rec.line), to_count(rec.tokens[2], rec.line));
  }
  if (static_cast<int>(bip.edges.size()) != m)
    throw KrcError(ErrorCode::ParseError, "edge count does not match header");
  bip.validate();
  return bip;
}

std::string render_bipartite(const Bipartite& bip) {
  std::ostringstream out;
  out << "p bip " << bip.left_count << ' ' << bip.right_count << ' ' << bip.edges.size() << '\n';
  for (auto [u, v] : bip.edges) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

Hypergraph parse_hypergraph(std::string_view text) {
  auto recs = records_of(text);
  const Record& h = header(recs, "hyp", 5);
  Hypergraph hg;
  hg.vertex_count = to_count(h.tokens[2], h.line);
  hg.uniformity = to_count(h.tokens[3], h.line);
  const int count = to_count(h.tokens[4], h.line);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const Record& rec = recs[i];
    if (rec.tokens[0] != "h") parse_fail(rec.line, "expected 'h <v1> ... <vlambda>'");
    expect_arity(rec, static_cast<std::size_t>(hg.uniformity) + 1);
    VertexSet e;
    for (std::size_t j = 1; j < rec.tokens.size(); ++j)
      e.push_back(static_cast<Vertex>(to_count(rec.tokens[j], rec.line)));
    hg.hyperedges.push_back(std::move(e));
  }
  if (static_cast<int>(hg.hyperedges.size()) != count)
    throw KrcError(ErrorCode::ParseError, "hyperedge count does not match header");
  hg.validate();
  return hg;
}

std::string render_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  out << "p hyp " << h.vertex_count << ' ' << h.uniformity << ' ' << h.hyperedges.size() << '\n';
  for (const VertexSet& e : h.hyperedges) {
    out << 'h';
    for (Vertex v : e) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KrcError(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw KrcError(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw KrcError(ErrorCode::IoError, "write failed for " + path);
}

Instance gen_random(const RandomParams& p, std::uint64_t seed) {
  if (p.n < 2 || p.m < 0 || p.r < 0 || p.k < 1 || p.w_min < 0 || p.w_max < p.w_min)
    throw KrcError(ErrorCode::InvalidArgument, "bad random-instance parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> vertex(0, p.n - 1);
  std::uniform_int_distribution<Vertex> other(0, p.n - 2);
  std::uniform_int_distribution<Weight> weight(p.w_min, p.w_max);
  // Drawing from n-1 slots and skipping u gives a uniform non-loop pair.
  auto pair = [&] {
    Vertex u = vertex(rng);
    Vertex v = other(rng);
    if (v >= u) ++v;
    return std::pair{u, v};
  };
  Instance inst;
  inst.graph = Graph(p.n);
  inst.k = p.k;
  inst.flavor = p.flavor;
  for (int i = 0; i < p.m; ++i) {
    auto [u, v] = pair();
    inst.graph.add_edge(u, v, weight(rng));
  }
  for (int i = 0; i < p.r; ++i) {
    auto [s, t] = pair();
    inst.demands.add(s, t);
  }
  return inst;
}

PlantedInstance gen_planted(const PlantedParams& p, std::uint64_t seed) {
  // A side of size k+1 cannot be split by fewer than k edges.
  if (p.k < 1 || p.side < p.k + 1 || p.side < 2 || p.r < 1 || p.cheap_edges < 1 ||
      p.bridge_weight < 0 || is_inf(p.bridge_weight))
    throw KrcError(ErrorCode::InvalidArgument, "bad planted-instance parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, p.side - 1);
  auto a = [](Vertex i) { return i; };
  auto b = [&](Vertex i) { return p.side + i; };

  PlantedInstance out;
  Instance& inst = out.instance;
  inst.graph = Graph(2 * p.side);
  inst.k = p.k;
  inst.flavor = Flavor::EdgeConnectivity;
  for (Vertex i = 0; i < p.side; ++i)
    for (Vertex j = i + 1; j < p.side; ++j) {
      inst.graph.add_edge(a(i), a(j), kInf);
      inst.graph.add_edge(b(i), b(j), kInf);
    }
  for (int i = 0; i < p.k - 1; ++i) inst.graph.add_edge(a(pick(rng)), b(pick(rng)), kInf);
  for (int i = 0; i < p.cheap_edges; ++i)
    inst.graph.add_edge(a(pick(rng)), b(pick(rng)), p.bridge_weight);
  for (int i = 0; i < p.r; ++i) inst.demands.add(a(pick(rng)), b(pick(rng)));
  out.planted_opt = sat_mul(p.bridge_weight, p.cheap_edges);
  return out;
}

Instance gen_grid(const GridParams& p, std::uint64_t seed) {
  if (p.rows < 2 || p.cols < 2 || p.r < 0 || p.k < 1 || p.w_min < 0 || p.w_max < p.w_min)
    throw KrcError(ErrorCode::InvalidArgument, "bad grid parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> weight(p.w_min, p.w_max);
  std::uniform_int_distribution<int> cell(0, p.rows * p.cols - 1);
  auto id = [&](int i, int j) { return static_cast<Vertex>(i * p.cols + j); };
  Instance inst;
  inst.graph = Graph(p.rows * p.cols);
  inst.k = p.k;
  inst.flavor = Flavor::EdgeConnectivity;
  for (int i = 0; i < p.rows; ++i)
    for (int j = 0; j < p.cols; ++j) {
      inst.graph.add_edge(id(i, j), id(i, (j + 1) % p.cols), weight(rng));
      inst.graph.add_edge(id(i, j), id((i + 1) % p.rows, j), weight(rng));
    }
  for (int q = 0; q < p.r; ++q) {
    int c = cell(rng);
    int i = c / p.cols;
    int j = c % p.cols;
    inst.demands.add(id(i, j), id((i + p.rows / 2) % p.rows, (j + p.cols / 2) % p.cols));
  }
  return inst;
}

}  // namespace krc
