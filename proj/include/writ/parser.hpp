#pragma once

// Reader for `.wt` source text.
//
//   type    ::= "Nat" | "List" | type "->" type | "(" type ")"
//   term    ::= "fn" ident ":" type "=>" term | appterm
//   appterm ::= appterm atom | atom
//   atom    ::= ident | numeral | "[" numerals "]" | "(" term ")"
//
// `--` starts a comment that runs to the end of the line. rec and fold take
// a type index written directly after the name: rec[Nat -> Nat].

#include <string>
#include <string_view>
#include <vector>

#include "writ/syntax.hpp"

namespace writ {

Term parse_term(std::string_view text);
Ty parse_type(std::string_view text);

struct SourceFile {
  /// Text of the leading `--` comment lines, without the dashes.
  std::vector<std::string> header;
  Term term;
};

SourceFile parse_source(std::string_view text);
SourceFile read_source_file(const std::string& path);

}  // namespace writ
