// Copyright 2026 The SolBugSmith Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "solbugsmith/injector.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "solbugsmith/error.h"
#include "solbugsmith/lexer.h"
#include "solbugsmith/parser.h"

namespace solbugsmith {
namespace {

// One replacement of original bytes [start, end) by `text`. Insertions are
// empty ranges. `mark` is the part of `text` that belongs to the bug, as
// opposed to line breaks added around it.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
  std::size_t mark_begin = 0;
  std::size_t mark_end = 0;
  // Text following on the same line is pushed to a new line with this
  // indentation.
  bool break_after = false;
  // The break replaces the whitespace run that followed the edit.
  bool break_eats_space = false;
  std::string break_indent;
};

struct Assembled {
  std::string text;
  // Output byte range of each edit's mark, in edit order.
  std::vector<std::pair<std::size_t, std::size_t>> marks;
};

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

std::string IndentAt(std::string_view src, std::size_t offset) {
  std::size_t line = src.rfind('\n', offset == 0 ? 0 : offset - 1);
  line = (line == std::string_view::npos || offset == 0) ? 0 : line + 1;
  if (offset == 0) line = 0;
  std::size_t j = line;
  while (j < src.size() && IsBlank(src[j])) ++j;
  return std::string(src.substr(line, j - line));
}

bool RestOfLineHasCode(std::string_view src, std::size_t at) {
  for (std::size_t i = at; i < src.size() && src[i] != '\n'; ++i) {
    if (!IsBlank(src[i]) && src[i] != '\r') return true;
  }
  return false;
}

std::string Indented(std::string_view text, const std::string& indent) {
  std::string out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t nl = text.find('\n', i);
    std::string_view line =
        text.substr(i, nl == std::string_view::npos ? std::string_view::npos
                                                    : nl - i);
    if (!line.empty()) out += indent;
    out += line;
    if (nl == std::string_view::npos) break;
    out += '\n';
    i = nl + 1;
  }
  return out;
}

// Edits must be sorted by start; insertions at a position come before a
// replacement starting there.
Assembled Assemble(std::string_view src, const std::vector<Edit>& edits) {
  Assembled out;
  std::size_t cursor = 0;
  const Edit* pending = nullptr;

  auto resolve_pending = [&](bool content_follows) {
    if (!pending) return;
    if (content_follows) {
      if (pending->break_eats_space) {
        while (cursor < src.size() && IsBlank(src[cursor])) ++cursor;
      }
      out.text += '\n';
      out.text += pending->break_indent;
    }
    pending = nullptr;
  };

  for (const Edit& e : edits) {
    if (e.start < cursor || e.end < e.start || e.end > src.size()) {
      throw EditConflict("edit at byte " + std::to_string(e.start) +
                         " overlaps an earlier edit");
    }
    const bool insertion = e.start == e.end;
    if (e.start > cursor) {
      resolve_pending(RestOfLineHasCode(src, cursor));
      out.text.append(src.substr(cursor, e.start - cursor));
      cursor = e.start;
    } else if (pending && !insertion) {
      resolve_pending(true);
    } else if (pending && insertion && pending->break_eats_space) {
      // A following insertion opens its own line; the break it owed is
      // taken over as an ordinary one.
      pending = nullptr;
    }
    out.marks.push_back({out.text.size() + e.mark_begin,
                         out.text.size() + e.mark_end});
    out.text += e.text;
    cursor = e.end;
    if (e.break_after) pending = &e;
    if (insertion && pending && pending != &e) pending = &e;
  }
  resolve_pending(RestOfLineHasCode(src, cursor));
  out.text.append(src.substr(cursor));
  return out;
}

Edit InsertionEdit(std::string_view src, std::size_t offset,
                   const std::string& indent, std::string_view body) {
  Edit e;
  e.start = e.end = offset;
  e.text = "\n" + Indented(body, indent);
  e.mark_begin = 1;
  e.mark_end = e.text.size();
  e.break_after = true;
  e.break_indent = IndentAt(src, offset);
  return e;
}

std::vector<Token> CodeTokens(std::string_view text) {
  std::vector<Token> out;
  for (Token& t : Tokenize(text)) {
    if (t.kind != TokenKind::kComment) out.push_back(std::move(t));
  }
  return out;
}

Edit TransformEdit(std::string_view src, const InjectionSite& site,
                   const TransformPattern& pattern) {
  const Span& m = site.match_span;
  std::vector<Token> toks = CodeTokens(src.substr(m.start, m.size()));
  std::string text;
  if (toks.size() == pattern.replace.size()) {
    // Keep the original spacing (and any comments) between tokens.
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i > 0) {
        text.append(src.substr(m.start + toks[i - 1].span.end,
                               toks[i].span.start - toks[i - 1].span.end));
      }
      text += pattern.replace[i];
    }
  } else {
    for (std::size_t i = 0; i < pattern.replace.size(); ++i) {
      const std::string& t = pattern.replace[i];
      if (i > 0 && t != "." && pattern.replace[i - 1] != ".") text += ' ';
      text += t;
    }
  }
  Edit e;
  e.start = m.start;
  e.end = m.end;
  e.text = std::move(text);
  e.mark_begin = 0;
  e.mark_end = e.text.size();
  return e;
}

std::string CommentOutLines(std::string_view text) {
  std::string out = "//";
  for (std::size_t i = 0; i < text.size(); ++i) {
    out += text[i];
    if (text[i] == '\n') {
      std::size_t j = i + 1;
      while (j < text.size() && IsBlank(text[j])) out += text[j++];
      i = j - 1;
      if (j < text.size()) out += "//";
    }
  }
  return out;
}

Edit WeakenEdit(std::string_view src, const InjectionSite& site) {
  const Span& s = site.revert_span;
  std::string_view stmt = src.substr(s.start, s.size());
  const std::string indent = IndentAt(src, s.start);
  std::string text = site.bare_arm ? "{ } " : "";
  text += CommentOutLines(stmt);
  if (site.shape == GuardShape::kRequire) {
    // Keep the call itself: only the check on its result goes away.
    std::vector<Token> toks = CodeTokens(stmt);
    int depth = 0;
    std::size_t first = 2, last = 2;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const std::string& x = toks[i].text;
      if (x == "(" || x == "[" || x == "{") ++depth;
      if (x == ")" || x == "]" || x == "}") --depth;
      if ((depth == 0 && x == ")") || (depth == 1 && x == ",")) {
        last = i;
        break;
      }
    }
    std::string_view call =
        stmt.substr(toks[first].span.start,
                    toks[last - 1].span.end - toks[first].span.start);
    text += "\n" + indent + std::string(call) + ";";
  }
  Edit e;
  e.start = s.start;
  e.end = s.end;
  e.text = std::move(text);
  e.mark_begin = 0;
  e.mark_end = e.text.size();
  e.break_after = true;
  e.break_eats_space = true;
  e.break_indent = indent;
  return e;
}

std::string Sanitize(std::string_view id) {
  std::string out;
  for (char c : id) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

std::string ContractOf(const InjectionSite& site) {
  return site.enclosing.empty() ? std::string() : site.enclosing.front();
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  int line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      if (!field.empty()) throw FormatError(line, "stray quote in field");
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
      ++line;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw FormatError(line, "unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string> kColumns = {
    "bugId",     "bugType", "approach", "snippetId", "file",
    "startLine", "endLine", "byteStart", "byteEnd"};

BugLogEntry EntryFromFields(const std::vector<std::string>& f, int line) {
  if (f.size() != kColumns.size()) {
    throw FormatError(line, "expected " + std::to_string(kColumns.size()) +
                                " columns, found " + std::to_string(f.size()));
  }
  BugLogEntry e;
  e.bug_id = f[0];
  std::optional<BugType> type = ParseBugType(f[1]);
  if (!type) throw FormatError(line, "unknown bug type '" + f[1] + "'");
  e.bug_type = *type;
  std::optional<Approach> approach = ParseApproach(f[2]);
  if (!approach) throw FormatError(line, "unknown approach '" + f[2] + "'");
  e.approach = *approach;
  if (!f[3].empty()) e.snippet_id = f[3];
  e.file = f[4];
  try {
    std::size_t used = 0;
    auto num = [&](const std::string& s) {
      long long v = std::stoll(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return v;
    };
    e.start_line = static_cast<int>(num(f[5]));
    e.end_line = static_cast<int>(num(f[6]));
    e.byte_span.start = static_cast<std::size_t>(num(f[7]));
    e.byte_span.end = static_cast<std::size_t>(num(f[8]));
  } catch (const std::exception&) {
    throw FormatError(line, "malformed number");
  }
  e.byte_span.start_line = e.start_line;
  e.byte_span.end_line = e.end_line;
  if (e.bug_id.empty() || e.start_line < 1 || e.end_line < e.start_line ||
      e.byte_span.end < e.byte_span.start) {
    throw FormatError(line, "inconsistent entry '" + e.bug_id + "'");
  }
  return e;
}

}  // namespace

std::string ApplySnippet(std::string_view source, const InjectionSite& site,
                         std::string_view snippet_text) {
  return Assemble(source,
                  {InsertionEdit(source, site.offset, site.indent, snippet_text)})
      .text;
}

std::string ApplyTransformation(std::string_view source,
                                const InjectionSite& site,
                                const TransformPattern& pattern) {
  return Assemble(source, {TransformEdit(source, site, pattern)}).text;
}

std::string ApplyWeakening(std::string_view source, const InjectionSite& site) {
  return Assemble(source, {WeakenEdit(source, site)}).text;
}

InjectionResult InjectAll(std::string_view source,
                          const InjectionProfile& profile, const BugPool& pool,
                          int counter_start, const std::string& file) {
  if (ContentHash(source) != profile.source_hash) {
    throw StaleProfile("profile for '" + profile.source_id +
                       "' was computed from different source text");
  }
  std::vector<Token> tokens = Tokenize(source);
  std::vector<std::string> original = CollectIdentifiers(tokens);
  std::set<std::string> taken(original.begin(), original.end());

  InjectionResult result;
  result.counter_start = counter_start;
  int counter = counter_start;
  std::map<SnippetForm, std::size_t> rotation;
  std::map<std::pair<std::string, std::string>, int> contexts;
  std::vector<Edit> edits;

  for (const InjectionSite& site : profile.sites) {
    if (site.Position() > source.size() ||
        (site.kind == SiteKind::kTransform && site.match_span.end > source.size()) ||
        (site.kind == SiteKind::kWeaken && site.revert_span.end > source.size())) {
      throw StaleProfile("site beyond the end of '" + profile.source_id + "'");
    }
    BugLogEntry entry;
    entry.bug_type = profile.bug_type;
    entry.file = file;
    switch (site.kind) {
      case SiteKind::kSnippet: {
        std::vector<const BugSnippet*> choices =
            pool.SnippetsOf(profile.bug_type, site.form);
        if (choices.empty()) {
          throw PoolError("", "no " + std::string(SnippetFormName(site.form)) +
                                  " snippet for " +
                                  std::string(BugTypeName(profile.bug_type)));
        }
        const BugSnippet& snippet =
            *choices[rotation[site.form]++ % choices.size()];
        const auto key = std::make_pair(ContractOf(site), snippet.id);
        const bool new_context =
            !snippet.required_context.empty() && !contexts.count(key);
        std::string text, context;
        std::vector<std::string> names;
        for (;; ++counter) {
          const int c = new_context ? counter
                                    : (contexts.count(key) ? contexts[key] : 0);
          text = Instantiate(snippet.template_text, counter, c);
          names = DeclaredNames(snippet, text);
          if (new_context) {
            context = Instantiate(snippet.required_context, counter, c);
            std::vector<std::string> more = ContextNames(snippet, context);
            names.insert(names.end(), more.begin(), more.end());
          }
          bool fresh = std::none_of(
              names.begin(), names.end(),
              [&](const std::string& n) { return taken.count(n) > 0; });
          if (fresh) break;
        }
        taken.insert(names.begin(), names.end());
        if (new_context) contexts[key] = counter;
        edits.push_back(InsertionEdit(
            source, site.offset, site.indent,
            new_context ? context + "\n" + text : text));
        entry.bug_id = SnippetBugId(snippet, text, counter);
        entry.approach = Approach::kFullSnippet;
        entry.snippet_id = snippet.id;
        break;
      }
      case SiteKind::kTransform: {
        const TransformPattern* pattern = pool.FindTransform(site.ref);
        if (!pattern) throw PoolError(site.ref, "unknown transform pattern");
        edits.push_back(TransformEdit(source, site, *pattern));
        entry.bug_id = "transform_" + Sanitize(site.ref) + std::to_string(counter);
        entry.approach = Approach::kCodeTransformation;
        break;
      }
      case SiteKind::kWeaken: {
        if (!pool.FindWeakening(site.ref)) {
          throw PoolError(site.ref, "unknown weakening rule");
        }
        edits.push_back(WeakenEdit(source, site));
        entry.bug_id = "weaken_" + Sanitize(site.ref) + std::to_string(counter);
        entry.approach = Approach::kWeakenSecurity;
        break;
      }
    }
    ++counter;
    result.log.push_back(std::move(entry));
  }

  // Stable: sites at one position keep profile order.
  std::vector<std::size_t> order(edits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edits[a].start < edits[b].start;
  });
  std::vector<Edit> sorted;
  for (std::size_t i : order) sorted.push_back(edits[i]);
  Assembled out = Assemble(source, sorted);

  LineMap lines(out.text);
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto [begin, end] = out.marks[k];
    BugLogEntry& entry = result.log[order[k]];
    entry.byte_span = lines.MakeSpan(begin, end);
    entry.start_line = entry.byte_span.start_line;
    entry.end_line = entry.byte_span.end_line;
  }
  result.buggy_source = std::move(out.text);
  result.counter_end = counter;
  return result;
}

std::string EmitBugLog(const BugLog& log, BugLogFormat format) {
  if (format == BugLogFormat::kCsv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      out << (i ? "," : "") << kColumns[i];
    }
    out << "\n";
    for (const BugLogEntry& e : log) {
      out << Quote(e.bug_id) << "," << BugTypeName(e.bug_type) << ","
          << ApproachName(e.approach) << "," << Quote(e.snippet_id.value_or(""))
          << "," << Quote(e.file) << "," << e.start_line << "," << e.end_line
          << "," << e.byte_span.start << "," << e.byte_span.end << "\n";
    }
    return out.str();
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const BugLogEntry& e : log) {
    doc.push_back({{"bugId", e.bug_id},
                   {"bugType", BugTypeName(e.bug_type)},
                   {"approach", ApproachName(e.approach)},
                   {"snippetId", e.snippet_id ? nlohmann::ordered_json(*e.snippet_id)
                                              : nlohmann::ordered_json()},
                   {"file", e.file},
                   {"startLine", e.start_line},
                   {"endLine", e.end_line},
                   {"byteStart", e.byte_span.start},
                   {"byteEnd", e.byte_span.end}});
  }
  return log.empty() ? "[]\n" : doc.dump(2) + "\n";
}

BugLog ParseBugLog(std::string_view text, BugLogFormat format) {
  BugLog log;
  if (format == BugLogFormat::kCsv) {
    std::vector<std::vector<std::string>> rows = ParseCsv(text);
    if (rows.empty() || rows[0] != kColumns) {
      throw FormatError(1, "missing or wrong CSV header");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      log.push_back(EntryFromFields(rows[i], static_cast<int>(i) + 1));
    }
    return log;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    LineMap lines(text);
    int line = lines.LineOf(std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0,
                                                  text.size()));
    throw FormatError(line, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw FormatError(1, "bug log is not a JSON array");
  const std::vector<int> lines = JsonArrayElementLines(text);
  int index = 0;
  for (const nlohmann::json& obj : doc) {
    const int line = static_cast<std::size_t>(index) < lines.size()
                         ? lines[static_cast<std::size_t>(index)]
                         : 1;
    ++index;
    if (!obj.is_object() || obj.size() != kColumns.size()) {
      throw FormatError(line, "entry " + std::to_string(index) +
                                  " does not have exactly the log fields");
    }
    std::vector<std::string> fields;
    for (const std::string& key : kColumns) {
      auto it = obj.find(key);
      if (it == obj.end()) {
        throw FormatError(line, "entry " + std::to_string(index) + " lacks '" +
                                    key + "'");
      }
      if (key == "snippetId" && it->is_null()) {
        fields.emplace_back();
      } else if (it->is_string()) {
        fields.push_back(it->get<std::string>());
      } else if (it->is_number_unsigned()) {
        fields.push_back(std::to_string(it->get<unsigned long long>()));
      } else {
        throw FormatError(line, "entry " + std::to_string(index) +
                                    " has a mistyped '" + key + "'");
      }
    }
    log.push_back(EntryFromFields(fields, line));
  }
  return log;
}

void WriteBugLog(const std::filesystem::path& path, const BugLog& log,
                 BugLogFormat format) {
  std::ofstream out(path, std::ios::binary);
  out << EmitBugLog(log, format);
  if (!out) throw IoError("cannot write " + path.string());
}

BugLog ReadBugLog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseBugLog(buf.str(), path.extension() == ".csv" ? BugLogFormat::kCsv
                                                           : BugLogFormat::kJson);
}

}  // namespace solbugsmith
