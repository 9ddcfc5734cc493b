#include "grpdb/generator_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "grpdb/error.hpp"

namespace grpdb {

namespace {

bool all_of(std::string_view s, int (*pred)(int)) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!pred(c)) return false;
  return true;
}

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_words(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

bool is_group_label(std::string_view label) {
  const auto dot = label.find('.');
  if (dot == std::string_view::npos) return false;
  const auto n = label.substr(0, dot);
  const auto i = label.substr(dot + 1);
  if (!all_of(n, [](int c) { return std::isdigit(c); }) || n.front() == '0') return false;
  if (all_of(i, [](int c) { return std::isdigit(c); })) return i.front() != '0';
  return all_of(i, [](int c) { return std::islower(c); });
}

std::vector<GeneratorBlock> parse_generator_file(std::string_view text) {
  std::vector<GeneratorBlock> blocks;
  std::optional<GeneratorBlock> current;
  int line_no = 0;

  auto finish = [&]() {
    if (!current) return;
    if (current->generators.empty()) throw ParseError("group has no generators", current->line, 1);
    blocks.push_back(std::move(*current));
    current.reset();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = strip_cr(raw);

    if (blank(line)) {
      finish();
      continue;
    }
    if (!current) {
      const auto words = split_words(line);
      if (words.front().text.front() == '#') continue;
      if (words.front().text != "group") throw ParseError("expected 'group'", line_no, words.front().column);
      GeneratorBlock block;
      block.line = line_no;
      std::size_t w = 1;
      if (w < words.size() && words[w].text != "degree") {
        if (!is_group_label(words[w].text)) throw ParseError("malformed label", line_no, words[w].column);
        block.label = std::string(words[w].text);
        ++w;
      }
      if (w >= words.size() || words[w].text != "degree") {
        const int col = w < words.size() ? words[w].column : static_cast<int>(line.size()) + 1;
        throw ParseError("expected 'degree'", line_no, col);
      }
      ++w;
      if (w >= words.size()) throw ParseError("expected degree value", line_no, static_cast<int>(line.size()) + 1);
      if (!all_of(words[w].text, [](int c) { return std::isdigit(c); }) || words[w].text.size() > 5)
        throw ParseError("malformed degree", line_no, words[w].column);
      block.degree = std::stoul(std::string(words[w].text));
      if (block.degree == 0 || block.degree > 65535) throw ParseError("degree out of range", line_no, words[w].column);
      ++w;
      if (w < words.size() && words[w].text == "name") {
        if (w + 1 >= words.size()) throw ParseError("expected a name", line_no, static_cast<int>(line.size()) + 1);
        block.name = std::string(words[w + 1].text);
        w += 2;
      }
      if (w < words.size()) throw ParseError("unexpected text after degree", line_no, words[w].column);
      current = std::move(block);
      continue;
    }
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t");
    const auto body = line.substr(first, last - first + 1);
    try {
      current->generators.push_back(Permutation::parse_cycles(body, current->degree));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, e.column() + static_cast<int>(first));
    }
  }
  finish();
  return blocks;
}

std::vector<GeneratorBlock> read_generator_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator_file(buf.str());
}

std::string format_generator_block(const GeneratorBlock& block) {
  std::string out = "group ";
  if (block.label) out += *block.label + " ";
  out += "degree " + std::to_string(block.degree);
  if (!block.name.empty()) out += " name " + block.name;
  out += "\n";
  for (const auto& g : block.generators) out += g.cycles() + "\n";
  return out;
}

}  // namespace grpdb
