#pragma once

// The line-oriented text format for complexes and chain maps:
//
//   ring Z | Q | F p | Zeps p
//   complex NAME
//   degrees LO HI            # HI < LO means the zero complex
//   dim I N                  # one line per degree in [LO, HI]
//   diff I                   # dim(I+1) rows x dim(I) cols; omitted = zero
//   <row entries separated by spaces>
//   map NAME SRC TGT
//   comp I                   # omitted components are zero
//   <row entries>
//
// '#' starts a comment, blank lines are skipped, and entry tokens follow
// the ring's element grammar (-3, 2/3, 4, 2+3e). Parse errors carry
// line/column positions; serialize_file output re-parses to equal values.

#include <string>
#include <vector>

#include "weightkit/complex.hpp"

namespace weightkit {

struct NamedMap {
    std::string name, src, tgt;
    ChainMap map;
};

struct FileContent {
    CoeffRing ring = CoeffRing::integers();
    std::vector<std::pair<std::string, Complex>> complexes;
    std::vector<NamedMap> maps;
};

FileContent parse_file(const std::string& text);
// Reads and parses; ParseError mentions the path on I/O failure.
FileContent load_file(const std::string& path);
std::string serialize_file(const FileContent& content);

const Complex* find_complex(const FileContent& content, const std::string& name);
const NamedMap* find_map(const FileContent& content, const std::string& name);

}  // namespace weightkit
