#include "cdi/docstrings.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace cdi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

size_t indent_of(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

bool all_dashes(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c == '-'; });
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::optional<DocSection> numpy_section(std::string_view header) {
  if (header == "Parameters" || header == "Other Parameters")
    return DocSection::Parameters;
  if (header == "Attributes") return DocSection::Attributes;
  if (header == "Returns" || header == "Yields") return DocSection::Returns;
  if (header == "Raises" || header == "Warns") return DocSection::Raises;
  return std::nullopt;
}

std::optional<DocSection> google_section(std::string_view header) {
  if (header == "Args:" || header == "Arguments:" || header == "Parameters:")
    return DocSection::Args;
  if (header == "Attributes:") return DocSection::Attributes;
  if (header == "Returns:" || header == "Yields:") return DocSection::Returns;
  if (header == "Raises:") return DocSection::Raises;
  return std::nullopt;
}

std::optional<std::string> default_of(const std::string& type_text) {
  size_t pos = type_text.find("default");
  if (pos == std::string::npos) return std::nullopt;
  std::string d(trim(std::string_view(type_text).substr(pos)));
  return d;
}

void append_desc(std::string& desc, std::string_view more) {
  if (!desc.empty()) desc += " ";
  desc += std::string(more);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

void add_param(std::vector<ParamDoc>& out, std::set<std::string>& seen,
               ParamDoc p) {
  if (p.name.empty()) return;
  if (!seen.insert(p.name).second) return;  // first occurrence wins
  out.push_back(std::move(p));
}

void parse_numpy(const std::vector<std::string>& lines,
                 std::vector<ParamDoc>& out) {
  std::set<std::string> seen;
  size_t i = 0;
  while (i < lines.size()) {
    std::string_view header = trim(lines[i]);
    auto section = numpy_section(header);
    if (!section || i + 1 >= lines.size() ||
        !all_dashes(trim(lines[i + 1])) ||
        trim(lines[i + 1]).size() != header.size()) {
      ++i;
      continue;
    }
    size_t section_indent = indent_of(lines[i]);
    i += 2;
    std::optional<ParamDoc> cur;
    while (i < lines.size()) {
      std::string_view raw = lines[i];
      std::string_view line = trim(raw);
      if (line.empty()) {
        ++i;
        continue;
      }
      size_t ind = indent_of(raw);
      if (ind <= section_indent &&
          (numpy_section(line) || all_dashes(line))) break;
      if (ind == section_indent) {
        if (cur) add_param(out, seen, std::move(*cur));
        cur = ParamDoc{};
        cur->section = *section;
        size_t colon = line.find(':');
        std::string_view name_part =
            colon == std::string_view::npos ? line : line.substr(0, colon);
        cur->name = std::string(trim(name_part));
        if (colon != std::string_view::npos)
          cur->type_text = std::string(trim(line.substr(colon + 1)));
        cur->default_text = default_of(cur->type_text);
        // names like "x, y" or return entries that are only a type
        if (!std::all_of(cur->name.begin(), cur->name.end(), ident_char))
          cur.reset();
      } else if (cur) {
        append_desc(cur->description, line);
      }
      ++i;
    }
    if (cur) add_param(out, seen, std::move(*cur));
  }
}

void parse_google(const std::vector<std::string>& lines,
                  std::vector<ParamDoc>& out) {
  std::set<std::string> seen;
  size_t i = 0;
  while (i < lines.size()) {
    std::string_view header = trim(lines[i]);
    auto section = google_section(header);
    if (!section) {
      ++i;
      continue;
    }
    size_t section_indent = indent_of(lines[i]);
    ++i;
    std::optional<ParamDoc> cur;
    std::optional<size_t> entry_indent;
    while (i < lines.size()) {
      std::string_view raw = lines[i];
      std::string_view line = trim(raw);
      if (line.empty()) {
        ++i;
        continue;
      }
      size_t ind = indent_of(raw);
      if (ind <= section_indent) break;
      if (!entry_indent) entry_indent = ind;
      if (ind == *entry_indent) {
        if (cur) add_param(out, seen, std::move(*cur));
        cur = ParamDoc{};
        cur->section = *section;
        size_t colon = line.find(':');
        // skip over a :role:`...` colon inside the type parenthetical
        size_t paren = line.find('(');
        if (paren != std::string_view::npos && colon > paren) {
          size_t close = line.find(')', paren);
          if (close != std::string_view::npos)
            colon = line.find(':', close);
        }
        if (colon == std::string_view::npos) {
          cur->name = std::string(line);
        } else {
          std::string_view head = trim(line.substr(0, colon));
          cur->description = std::string(trim(line.substr(colon + 1)));
          size_t p = head.find('(');
          if (p != std::string_view::npos && head.back() == ')') {
            cur->name = std::string(trim(head.substr(0, p)));
            cur->type_text =
                std::string(trim(head.substr(p + 1, head.size() - p - 2)));
          } else {
            cur->name = std::string(head);
          }
        }
        cur->default_text = default_of(cur->type_text);
        if (!std::all_of(cur->name.begin(), cur->name.end(), ident_char))
          cur.reset();
      } else if (cur) {
        append_desc(cur->description, line);
      }
      ++i;
    }
    if (cur) add_param(out, seen, std::move(*cur));
  }
}

bool has_numpy_header(const std::vector<std::string>& lines) {
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    std::string_view header = trim(lines[i]);
    if (numpy_section(header) && all_dashes(trim(lines[i + 1])) &&
        trim(lines[i + 1]).size() == header.size())
      return true;
  }
  return false;
}

bool has_google_header(const std::vector<std::string>& lines) {
  for (const auto& l : lines)
    if (google_section(trim(l))) return true;
  return false;
}

}  // namespace

std::pair<DocStyle, std::vector<ParamDoc>> parse_param_sections(
    std::string_view docstring) {
  std::vector<std::string> lines = split_lines(docstring);
  std::vector<ParamDoc> params;
  if (has_numpy_header(lines)) {
    parse_numpy(lines, params);
    return {DocStyle::NumPy, std::move(params)};
  }
  if (has_google_header(lines)) {
    parse_google(lines, params);
    return {DocStyle::Google, std::move(params)};
  }
  return {DocStyle::Unknown, {}};
}

namespace {

struct ScanFrame {
  size_t indent = 0;
  std::string name;
};

void scan_file(const std::filesystem::path& path, std::vector<DocUnit>& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }

  std::vector<ScanFrame> stack;  // enclosing classes/defs
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view raw = lines[i];
    std::string_view t = trim(raw);
    bool is_class = t.rfind("class ", 0) == 0;
    bool is_def = t.rfind("def ", 0) == 0;
    if (!is_class && !is_def) continue;
    size_t ind = indent_of(raw);
    while (!stack.empty() && stack.back().indent >= ind) stack.pop_back();

    std::string_view rest = t.substr(is_class ? 6 : 4);
    size_t j = 0;
    while (j < rest.size() && ident_char(rest[j])) ++j;
    std::string name(rest.substr(0, j));
    if (name.empty()) continue;

    OwnerKind kind = is_class ? OwnerKind::Class
                     : stack.empty() ? OwnerKind::Function
                                     : OwnerKind::Method;
    std::string qualified;
    for (const auto& f : stack) qualified += f.name + ".";
    qualified += name;
    stack.push_back({ind, name});

    // find the header-ending ':' (tolerating multi-line signatures)
    size_t k = i;
    int depth = 0;
    bool found_colon = false;
    for (; k < lines.size() && k < i + 50; ++k) {
      for (char c : lines[k]) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == '#') break;
      }
      std::string_view e = trim(lines[k]);
      if (depth <= 0 && !e.empty() && e.back() == ':') {
        found_colon = true;
        break;
      }
    }
    if (!found_colon) continue;

    // next non-blank line must open a docstring
    size_t d = k + 1;
    while (d < lines.size() && trim(lines[d]).empty()) ++d;
    if (d >= lines.size()) continue;
    std::string_view dl = trim(lines[d]);
    std::string quote;
    for (const char* q : {"\"\"\"", "'''", "r\"\"\"", "r'''"}) {
      if (dl.rfind(q, 0) == 0) {
        quote = std::string(q).back() == '"' ? "\"\"\"" : "'''";
        break;
      }
    }
    if (quote.empty()) continue;

    std::string doc;
    size_t open = lines[d].find(quote);
    std::string first_rest = lines[d].substr(open + 3);
    size_t close_same = first_rest.find(quote);
    size_t end_line = d;
    if (close_same != std::string::npos) {
      doc = first_rest.substr(0, close_same);
    } else {
      doc = first_rest;
      for (size_t e = d + 1; e < lines.size(); ++e) {
        size_t close = lines[e].find(quote);
        if (close != std::string::npos) {
          doc += "\n" + lines[e].substr(0, close);
          end_line = e;
          break;
        }
        doc += "\n" + lines[e];
        end_line = e;
      }
    }

    DocUnit unit;
    unit.owner_kind = kind;
    unit.owner_name = qualified;
    unit.file_path = path.string();
    unit.line_begin = static_cast<int>(i) + 1;
    unit.line_end = static_cast<int>(end_line) + 1;
    auto [style, params] = parse_param_sections(doc);
    unit.style = style;
    unit.params = std::move(params);
    out.push_back(std::move(unit));
  }
}

}  // namespace

std::vector<DocUnit> extract_docstrings(const std::filesystem::path& root) {
  std::error_code ec;
  if (!std::filesystem::exists(root, ec) || ec)
    throw IoError("no such path: " + root.string());
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(root)) {
    for (auto it = std::filesystem::recursive_directory_iterator(root, ec);
         !ec && it != std::filesystem::recursive_directory_iterator(); ++it) {
      if (it->is_regular_file() && it->path().extension() == ".py")
        files.push_back(it->path());
    }
  } else {
    files.push_back(root);
  }
  std::sort(files.begin(), files.end());
  std::vector<DocUnit> out;
  for (const auto& f : files) scan_file(f, out);
  return out;
}

namespace {

bool whole_word_at(const std::string& text, size_t pos, size_t len) {
  bool left_ok = pos == 0 || !ident_char(text[pos - 1]);
  bool right_ok = pos + len >= text.size() || !ident_char(text[pos + len]);
  return left_ok && right_ok;
}

std::string containing_sentence(const std::string& text, size_t pos) {
  size_t begin = 0;
  for (size_t i = pos; i > 0; --i) {
    char c = text[i - 1];
    if (c == '.' || c == '!' || c == '?') {
      begin = i;
      break;
    }
  }
  size_t end = text.size();
  for (size_t i = pos; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      end = i + 1;
      break;
    }
  }
  return std::string(trim(std::string_view(text).substr(begin, end - begin)));
}

bool pairing_section(DocSection s) {
  return s == DocSection::Parameters || s == DocSection::Attributes ||
         s == DocSection::Args;
}

}  // namespace

std::vector<CandidatePair> filter_candidates(const DocUnit& unit) {
  std::vector<CandidatePair> out;
  for (const auto& a : unit.params) {
    if (!pairing_section(a.section)) continue;
    for (const auto& b : unit.params) {
      if (!pairing_section(b.section)) continue;
      if (a.name == b.name) continue;
      const std::string& text = a.description;
      size_t pos = 0;
      while ((pos = text.find(b.name, pos)) != std::string::npos) {
        if (whole_word_at(text, pos, b.name.size())) {
          out.push_back({a.name, b.name, containing_sentence(text, pos)});
          break;
        }
        pos += 1;
      }
    }
  }
  return out;
}

}  // namespace cdi
