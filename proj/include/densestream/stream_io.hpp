#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "densestream/graph.hpp"

namespace densestream {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line_) + ": " + reason),
        line(line_) {}
};

// Update-stream file: one record per line.
//   header:  "# n=<int>"  and optionally "# directed=1"
//   records: "+ u v" insert, "- u v" delete, "?" query checkpoint
struct StreamFile {
  NodeId n = 0;
  bool directed = false;
  std::vector<UpdateEvent> events;
  std::vector<int> lines;  // source line per event, for error reporting
};

struct ParseOptions {
  bool require_header = true;
  // Used when require_header is false and no header line is present.
  NodeId default_n = 0;
};

StreamFile parse_stream(std::istream& in, const ParseOptions& opts = {});
StreamFile parse_stream_file(const std::string& path,
                             const ParseOptions& opts = {});

void write_stream(std::ostream& out, const StreamFile& s);

}  // namespace densestream
