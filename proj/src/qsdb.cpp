#include "tkus/qsdb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace tkus {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Calls fn(line_number, line) for every line, 1-based.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(++line_no, text.substr(start, end - start));
    start = end + 1;
  }
}

template <class Int>
std::optional<Int> parse_uint(std::string_view token) {
  if (token.empty() || token.front() == '-' || token.front() == '+') return std::nullopt;
  Int value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<double> parse_number(std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

std::size_t QSequence::length() const {
  std::size_t n = 0;
  for (const auto& set : itemsets) n += set.size();
  return n;
}

bool UtilityTable::insert(ItemId item, Utility external_utility) {
  return table_.emplace(item, external_utility).second;
}

Utility UtilityTable::at(ItemId item) const {
  auto it = table_.find(item);
  if (it == table_.end()) {
    throw std::out_of_range("item " + std::to_string(item) + " has no external utility");
  }
  return it->second;
}

std::vector<ItemId> Database::alphabet() const {
  std::set<ItemId> items;
  for (const auto& seq : sequences)
    for (const auto& set : seq.itemsets)
      for (const auto& q : set) items.insert(q.item);
  return {items.begin(), items.end()};
}

std::size_t Database::longest_sequence_length() const {
  std::size_t longest = 0;
  for (const auto& seq : sequences) longest = std::max(longest, seq.length());
  return longest;
}

const QSequence* Database::find(SequenceId sid) const {
  for (const auto& seq : sequences)
    if (seq.sid == sid) return &seq;
  return nullptr;
}

std::size_t Pattern::length() const {
  std::size_t n = 0;
  for (const auto& set : itemsets) n += set.size();
  return n;
}

Pattern Pattern::i_extend(ItemId item) const {
  Pattern out = *this;
  out.itemsets.back().push_back(item);
  return out;
}

Pattern Pattern::s_extend(ItemId item) const {
  Pattern out = *this;
  out.itemsets.push_back({item});
  return out;
}

bool Pattern::is_valid() const {
  for (const auto& set : itemsets) {
    if (set.empty()) return false;
    if (std::adjacent_find(set.begin(), set.end(), std::greater_equal<>{}) != set.end())
      return false;
  }
  return true;
}

std::string Pattern::to_string() const {
  std::string out;
  for (const auto& set : itemsets) {
    out += '{';
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(set[i]);
    }
    out += '}';
  }
  return out;
}

Pattern parse_pattern(std::string_view text) {
  Pattern p;
  std::size_t i = 0;
  text = trim(text);
  while (i < text.size()) {
    if (text[i] != '{') throw std::invalid_argument("pattern: expected '{'");
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) throw std::invalid_argument("pattern: missing '}'");
    std::vector<ItemId> set;
    for (auto tok : split_ws(text.substr(i + 1, close - i - 1))) {
      auto id = parse_uint<ItemId>(tok);
      if (!id) throw std::invalid_argument("pattern: bad item '" + std::string(tok) + "'");
      set.push_back(*id);
    }
    p.itemsets.push_back(std::move(set));
    i = close + 1;
  }
  if (p.empty() || !p.is_valid()) throw std::invalid_argument("pattern: invalid itemsets");
  return p;
}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::DuplicateItem: return "DuplicateItem";
    case ParseErrorKind::NonPositiveUtility: return "NonPositiveUtility";
    case ParseErrorKind::MalformedLine: return "MalformedLine";
    case ParseErrorKind::UnknownItem: return "UnknownItem";
    case ParseErrorKind::MalformedToken: return "MalformedToken";
    case ParseErrorKind::EmptyItemset: return "EmptyItemset";
    case ParseErrorKind::MissingTerminator: return "MissingTerminator";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(std::string(tkus::to_string(kind)) + " at line " + std::to_string(line) +
                         ": " + detail),
      kind_(kind),
      line_(line) {}

UtilityTable parse_utility_table(std::string_view text) {
  UtilityTable table;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (skippable(line)) return;
    const auto tokens = split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError(ParseErrorKind::MalformedLine, line_no, "expected '<item> <utility>'");
    }
    const auto item = parse_uint<ItemId>(tokens[0]);
    const auto eu = parse_number(tokens[1]);
    if (!item || !eu) {
      throw ParseError(ParseErrorKind::MalformedLine, line_no, std::string(trim(line)));
    }
    if (*eu <= 0.0) {
      throw ParseError(ParseErrorKind::NonPositiveUtility, line_no,
                       "item " + std::to_string(*item) + " has utility " + std::string(tokens[1]));
    }
    if (!table.insert(*item, *eu)) {
      throw ParseError(ParseErrorKind::DuplicateItem, line_no,
                       "item " + std::to_string(*item) + " listed twice");
    }
  });
  return table;
}

std::string serialize_utility_table(const UtilityTable& utable) {
  std::string out;
  for (const auto& [item, eu] : utable.entries()) {
    out += std::to_string(item);
    out += ' ';
    out += format_utility(eu);
    out += '\n';
  }
  return out;
}

Database parse_database(std::string_view text, const UtilityTable& utable) {
  Database db;
  db.utable = utable;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (skippable(line)) return;
    QSequence seq;
    seq.sid = static_cast<SequenceId>(db.sequences.size() + 1);
    QItemset current;
    bool terminated = false;

    auto close_itemset = [&](bool at_terminator) {
      if (current.empty()) {
        // `-1 -2` closes the last itemset twice; tolerated when something was closed.
        if (at_terminator && !seq.itemsets.empty()) return;
        throw ParseError(ParseErrorKind::EmptyItemset, line_no, "itemset has no items");
      }
      std::sort(current.begin(), current.end(),
                [](const QItem& a, const QItem& b) { return a.item < b.item; });
      for (std::size_t i = 1; i < current.size(); ++i) {
        if (current[i].item == current[i - 1].item) {
          throw ParseError(ParseErrorKind::MalformedToken, line_no,
                           "item " + std::to_string(current[i].item) +
                               " repeated within one itemset");
        }
      }
      seq.itemsets.push_back(std::move(current));
      current.clear();
    };

    for (auto token : split_ws(line)) {
      if (terminated) {
        throw ParseError(ParseErrorKind::MalformedToken, line_no,
                         "token '" + std::string(token) + "' after -2");
      }
      if (token == "-1") {
        close_itemset(false);
        continue;
      }
      if (token == "-2") {
        close_itemset(true);
        terminated = true;
        continue;
      }
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(ParseErrorKind::MalformedToken, line_no,
                         "expected item:quantity, got '" + std::string(token) + "'");
      }
      const auto item = parse_uint<ItemId>(token.substr(0, colon));
      const auto qty = parse_uint<Quantity>(token.substr(colon + 1));
      if (!item || !qty || *qty == 0) {
        throw ParseError(ParseErrorKind::MalformedToken, line_no,
                         "bad q-item '" + std::string(token) + "'");
      }
      if (!utable.contains(*item)) {
        throw ParseError(ParseErrorKind::UnknownItem, line_no,
                         "item " + std::to_string(*item) + " missing from utility table");
      }
      current.push_back({*item, *qty});
    }
    if (!terminated) {
      throw ParseError(ParseErrorKind::MissingTerminator, line_no, "sequence not closed by -2");
    }
    db.sequences.push_back(std::move(seq));
  });
  return db;
}

std::string serialize_database(const Database& db) {
  std::string out;
  for (const auto& seq : db.sequences) {
    for (std::size_t j = 0; j < seq.itemsets.size(); ++j) {
      if (j) out += "-1 ";
      for (const auto& q : seq.itemsets[j]) {
        out += std::to_string(q.item);
        out += ':';
        out += std::to_string(q.quantity);
        out += ' ';
      }
    }
    out += "-2\n";
  }
  return out;
}

std::string format_utility(Utility value) {
  if (std::nearbyint(value) == value && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

UtilityTable load_utility_table(const std::string& path) {
  return parse_utility_table(read_file(path));
}

Database load_database(const std::string& db_path, const std::string& utable_path) {
  return parse_database(read_file(db_path), load_utility_table(utable_path));
}

}  // namespace tkus
