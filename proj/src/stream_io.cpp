#include "densestream/stream_io.hpp"

#include <fstream>
#include <sstream>

namespace densestream {

namespace {

bool parse_node(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (c < '0' || c > '9') return false;
  errno = 0;
  out = std::strtoll(tok.c_str(), nullptr, 10);
  return errno == 0;
}

}  // namespace

StreamFile parse_stream(std::istream& in, const ParseOptions& opts) {
  StreamFile out;
  out.n = opts.default_n;
  bool saw_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip trailing CR and surrounding whitespace
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      std::istringstream hs(line.substr(start + 1));
      std::string kv;
      while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw ParseError(lineno, "malformed header entry '" + kv + "'");
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        long long x;
        if (!parse_node(val, x))
          throw ParseError(lineno, "bad header value '" + val + "'");
        if (key == "n") {
          if (x <= 0 || x > (1ll << 31))
            throw ParseError(lineno, "n out of range");
          out.n = static_cast<NodeId>(x);
          saw_header = true;
        } else if (key == "directed") {
          out.directed = x != 0;
        } else {
          throw ParseError(lineno, "unknown header key '" + key + "'");
        }
      }
      continue;
    }
    if (!saw_header && opts.require_header)
      throw ParseError(lineno, "missing '# n=<int>' header");

    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "?") {
      std::string rest;
      if (ls >> rest) throw ParseError(lineno, "trailing tokens after '?'");
      out.events.push_back(UpdateEvent::query());
      out.lines.push_back(lineno);
      continue;
    }
    if (op != "+" && op != "-")
      throw ParseError(lineno, "unknown record '" + op + "'");
    std::string us, vs, rest;
    if (!(ls >> us >> vs)) throw ParseError(lineno, "expected two node ids");
    if (ls >> rest) throw ParseError(lineno, "trailing tokens");
    long long u, v;
    if (!parse_node(us, u) || !parse_node(vs, v))
      throw ParseError(lineno, "bad node id");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (out.n > 0 && (u >= out.n || v >= out.n))
      throw ParseError(lineno, "node id exceeds declared n");
    if (out.n == 0) {
      NodeId hi = static_cast<NodeId>((u > v ? u : v) + 1);
      if (hi > out.n) out.n = hi;
    }
    out.events.push_back(op == "+"
                             ? UpdateEvent::insert(static_cast<NodeId>(u),
                                                   static_cast<NodeId>(v))
                             : UpdateEvent::remove(static_cast<NodeId>(u),
                                                   static_cast<NodeId>(v)));
    out.lines.push_back(lineno);
  }
  return out;
}

StreamFile parse_stream_file(const std::string& path,
                             const ParseOptions& opts) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open stream file: " + path);
  return parse_stream(f, opts);
}

void write_stream(std::ostream& out, const StreamFile& s) {
  out << "# n=" << s.n << "\n";
  if (s.directed) out << "# directed=1\n";
  for (const auto& e : s.events) {
    switch (e.kind) {
      case EventKind::Insert:
        out << "+ " << e.u << " " << e.v << "\n";
        break;
      case EventKind::Delete:
        out << "- " << e.u << " " << e.v << "\n";
        break;
      case EventKind::Query:
        out << "?\n";
        break;
    }
  }
}

}  // namespace densestream
