// Copyright 2026 The ICAR Authors
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

#ifndef ICAR_SCHEMA_TEXT_HPP_
#define ICAR_SCHEMA_TEXT_HPP_

#include <string>
#include <string_view>

#include "icar/schema.hpp"

namespace icar {

// Line-oriented schema document. One declaration per line, '#' starts a
// comment:
//
//   schema <name>
//   vertex <Vertex>
//   arrow <label> <Src> <Tgt>
//   functional <label> <Src> <Tgt>
//   attribute <name> <Owner> <decimal-score|text|integer>
//   fact <strict|reciprocity> <path> = <path>
//
// A path is a start vertex followed by "-label-> Vertex" hops, e.g.
// "CWE -Has-> CAPEC -Has-> CWE". Output is sorted and deterministic.
std::string to_schema_text(const KnowledgeSchema& schema);

// Throws ParseError naming the offending line. Arrow references inside
// facts are not resolved here; run validate_schema on the result.
KnowledgeSchema parse_schema_text(std::string_view text);

}  // namespace icar

#endif  // ICAR_SCHEMA_TEXT_HPP_
