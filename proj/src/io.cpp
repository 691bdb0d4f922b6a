#include "quasireg/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "quasireg/errors.hpp"

namespace quasireg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ratio parse_prob(const nlohmann::json& v) {
  if (v.is_string()) return Ratio::parse(v.get<std::string>());
  if (v.is_number_integer()) return Ratio(v.get<std::int64_t>());
  if (v.is_number()) return Ratio::parse(v.dump());
  throw PreconditionError("probability must be a string or a number");
}

NamedDist finish(std::vector<std::string> names, std::vector<Ratio> probs) {
  if (names.size() != probs.size()) throw PreconditionError("symbols and probs differ in length");
  std::unordered_map<std::string, int> seen;
  for (const auto& n : names) {
    if (n.empty()) throw PreconditionError("empty symbol name");
    if (seen[n]++) throw PreconditionError("duplicate symbol name '" + n + "'");
  }
  return NamedDist{std::move(names), Dist(std::move(probs))};
}

NamedDist parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("distribution JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("symbols") || !j.contains("probs")) {
    throw PreconditionError("distribution JSON needs \"symbols\" and \"probs\"");
  }
  std::vector<std::string> names;
  std::vector<Ratio> probs;
  for (const auto& s : j.at("symbols")) names.push_back(s.is_string() ? s.get<std::string>() : s.dump());
  for (const auto& p : j.at("probs")) probs.push_back(parse_prob(p));
  return finish(std::move(names), std::move(probs));
}

NamedDist parse_csv(std::string_view text) {
  std::vector<std::string> names;
  std::vector<Ratio> probs;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.rfind(',');
    if (comma == std::string::npos) throw PreconditionError("CSV line without a comma: '" + t + "'");
    const std::string name = trim(std::string_view(t).substr(0, comma));
    const std::string prob = trim(std::string_view(t).substr(comma + 1));
    if (first && name == "symbol" && prob == "prob") {
      first = false;
      continue;
    }
    first = false;
    names.push_back(name);
    probs.push_back(Ratio::parse(prob));
  }
  return finish(std::move(names), std::move(probs));
}

}  // namespace

NamedDist parse_dist(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw PreconditionError("empty distribution");
  return t[0] == '{' ? parse_json(t) : parse_csv(t);
}

NamedDist read_dist_file(const std::string& path) { return parse_dist(slurp(path)); }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
  }
  return out;
}

bool compact_names(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (n.size() != 1) return false;
  }
  return true;
}

Sequence parse_sequence(std::istream& in, const std::vector<std::string>& names) {
  std::unordered_map<std::string, Symbol> id;
  for (Symbol s = 0; s < names.size(); ++s) id[names[s]] = s;
  Sequence out;
  auto lookup = [&](const std::string& tok) {
    auto it = id.find(tok);
    if (it == id.end()) throw PreconditionError("unknown symbol '" + tok + "' in sequence");
    out.push_back(it->second);
  };
  if (compact_names(names)) {
    char c;
    while (in.get(c)) {
      if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
      lookup(std::string(1, c));
    }
  } else {
    std::string tok;
    while (in >> tok) lookup(tok);
  }
  return out;
}

Sequence read_sequence_file(const std::string& path, const std::vector<std::string>& names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  return parse_sequence(in, names);
}

SequenceWriter::SequenceWriter(std::FILE* out, std::vector<std::string> names)
    : out_(out), names_(std::move(names)), compact_(compact_names(names_)) {
  buf_.reserve(kChunk + 64);
}

SequenceWriter::~SequenceWriter() { flush(); }

void SequenceWriter::put(Symbol s) {
  buf_ += names_.at(s);
  wrote_ = true;
  if (!compact_) buf_ += '\n';
  if (buf_.size() >= kChunk) flush();
}

void SequenceWriter::end() {
  if (compact_ && wrote_) buf_ += '\n';
  wrote_ = false;
  flush();
}

void SequenceWriter::flush() {
  if (!buf_.empty()) {
    std::fwrite(buf_.data(), 1, buf_.size(), out_);
    buf_.clear();
  }
  std::fflush(out_);
}

}  // namespace quasireg
