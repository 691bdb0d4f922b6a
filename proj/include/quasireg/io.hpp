#pragma once

#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "quasireg/dist.hpp"

namespace quasireg {

// A distribution together with the user's symbol names; symbol s is names[s].
struct NamedDist {
  std::vector<std::string> names;
  Dist dist;
};

// JSON {"symbols": [...], "probs": [...]} with "num/den" or decimal strings
// (numbers are accepted too), or CSV lines "symbol,prob" with an optional
// header. The format is picked from the first non-blank character.
NamedDist parse_dist(std::string_view text);
NamedDist read_dist_file(const std::string& path);

// Names of "a".."z" then "s26", "s27", ... for generated alphabets.
std::vector<std::string> default_names(std::size_t n);

bool compact_names(const std::vector<std::string>& names);

// Reads a sequence written in either layout: one character per symbol when
// every name is a single character, otherwise whitespace-separated names.
Sequence parse_sequence(std::istream& in, const std::vector<std::string>& names);
Sequence read_sequence_file(const std::string& path, const std::vector<std::string>& names);

// Buffered writer, flushing in 64 KiB chunks.
class SequenceWriter {
 public:
  SequenceWriter(std::FILE* out, std::vector<std::string> names);
  ~SequenceWriter();
  SequenceWriter(const SequenceWriter&) = delete;
  SequenceWriter& operator=(const SequenceWriter&) = delete;

  void put(Symbol s);
  // Terminates compact output with a newline and flushes.
  void end();
  void flush();

 private:
  static constexpr std::size_t kChunk = 64 * 1024;
  std::FILE* out_;
  std::vector<std::string> names_;
  bool compact_;
  bool wrote_ = false;
  std::string buf_;
};

}  // namespace quasireg
